#pragma once

#include <stdexcept>
#include <string>

namespace qhc {

/// The input cannot be analysed as a reduced quasi-homogeneous curve.
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotQuasiHomogeneous : public AnalysisError {
public:
    using AnalysisError::AnalysisError;
};

class NotReduced : public AnalysisError {
public:
    using AnalysisError::AnalysisError;
};

/// g(z) does not split over the Gaussian rationals; float mode is required.
class NeedsFloatMode : public AnalysisError {
public:
    NeedsFloatMode(const std::string& g_text)
        : AnalysisError("g(z) = " + g_text +
                        " does not split into linear factors over the Gaussian rationals; "
                        "rerun with --mode float"),
          g_text_(g_text) {}
    const std::string& polynomial() const { return g_text_; }

private:
    std::string g_text_;
};

/// Two independently computed results disagree.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qhc
