#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "padl/job.hpp"

using namespace padl;
using nlohmann::json;

namespace {

// CSV rendering for tabular commands (legendre rows); everything else is JSON.
std::string to_csv(const json& doc) {
    std::ostringstream os;
    if (doc.contains("results") && doc["results"].contains("rows")) {
        os << "lambda,degree,class,trace,unit_root,unit_root_mod,series_ratio_root,routes_agree\n";
        for (const auto& row : doc["results"]["rows"]) {
            os << row["lambda"] << "," << row["degree"] << "," << row["class"].get<std::string>()
               << "," << row["trace"];
            if (row.contains("unit_root"))
                os << "," << row["unit_root"]["value"].get<std::string>() << ","
                   << row["unit_root"]["mod"].get<std::string>() << ","
                   << row["unit_root_series_ratio"]["value"].get<std::string>() << ","
                   << (row["routes_agree"].get<bool>() ? "yes" : "no");
            else
                os << ",,,,";
            os << "\n";
        }
        return os.str();
    }
    return doc.dump(2) + "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic L-function toolkit"};
    std::string job_path, out_path, format_override;
    int workers = 0;
    long long budget = 0;
    app.add_option("--job", job_path, "job file (JSON)")->required();
    app.add_option("--workers", workers, "worker threads for fiber computations");
    app.add_option("--budget", budget, "candidate budget for enumerations");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format_override, "json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;
    try {
        std::ifstream in(job_path);
        if (!in) {
            std::cerr << "cannot open job file: " << job_path << "\n";
            return 1;
        }
        json j = json::parse(in, nullptr, true, true); // allow comments
        JobSpec spec = JobSpec::parse(j);
        if (workers > 0) spec.workers = workers;
        if (budget > 0) spec.budget = (u64)budget;
        if (!format_override.empty()) spec.format = format_override;

        JobResult res = run_job(spec);
        exit_code = res.exit_code;
        std::string text = spec.format == "csv" ? to_csv(res.doc) : res.doc.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            out << text;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case Err::bad_input: return 1;
            case Err::check_failed: return 2;
            default: return 3;
        }
    } catch (const json::exception& e) {
        std::cerr << "malformed job: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "elapsed: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << " ms\n";
    return exit_code;
}
