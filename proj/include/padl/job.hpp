#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "padl/legendre.hpp"
#include "padl/monsky.hpp"

namespace padl {

// A batch job: one command per run, everything needed to reproduce it.  The
// echo section of every output re-parses to an equivalent spec.
struct JobSpec {
    std::string command;
    u64 p = 2;
    int a = 1;
    int N = 6;
    int D = 6;
    int B = 0; // 0: heuristic default
    int Dmax = 3;
    int rpow = 1;
    int twist = 0;
    u64 budget = 10'000'000;
    int workers = 1;
    std::string format = "json";

    std::vector<std::string> vars; // variable names; defaults per dimension
    int d = 1;
    std::vector<std::string> equations;
    std::string inverted;

    int rank = 1;
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::vector<u32>> gpows;
    std::vector<std::string> frob_images;

    std::vector<std::string> fbars; // character layer
    std::string c0 = "1";

    std::string alpha;            // slope for lfun/slopes ("0", "1/2", ...)
    std::string lambda = "all";   // legendre: "all" or a field-element index
    int lambda_degree = 1;
    bool with_expsum = true;
    bool with_integrality = false;
    bool with_weierstrass = false;

    static JobSpec parse(const nlohmann::json& j);
    nlohmann::json echo() const;
};

struct JobResult {
    nlohmann::json doc;
    int exit_code = 0;
};

JobResult run_job(const JobSpec& spec);

// JSON helpers shared with the CLI.
nlohmann::json padic_json(const PadicInt& v);
nlohmann::json scaled_json(const Scaled<PadicInt>& v);
nlohmann::json series_json(const TruncSeries<Scaled<PadicInt>>& L);
nlohmann::json polygon_json(const NewtonPolygon& np);

} // namespace padl
