#pragma once

#include <string>
#include <vector>

#include "qrk/qcalc.hpp"

namespace qrk {

// One identity over a grid: the largest residual seen against its tolerance.
struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;  // measured tables, fitted constants
    bool ok() const;
};

struct VerifyOptions {
    int quad_order = 200;
    int truncation = 40;
};

// geg qgeg besslom int qbesslom qint sinc qrp isf gram parseval sampling neumann hayman genrec sections
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// Throws DomainError for an unknown name; "all" is handled by the caller.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt = {});

// Degree-6 test vector (1 - x^2) * quartic, used by the sampling checks and the shipped fixture.
cplx sampling_fixture(double x);

}  // namespace qrk
