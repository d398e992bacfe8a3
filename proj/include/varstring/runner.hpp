#pragma once

#include <string>

namespace varstring {

struct RunOptions {
    std::string configPath;
    std::string outDir = "out";
    int threads = 1;
    bool faultInjection = false; // verify only: perturb spectral coefficients
};

// Each returns a process exit code: 0 success, 1 verification failure.
// Config and numerical errors propagate as exceptions (mapped in main).
int run_simulate(const RunOptions& opt);
int run_verify(const RunOptions& opt);
int run_window(const RunOptions& opt);
int run_moore_export(const RunOptions& opt);

} // namespace varstring
