#pragma once

#include <string>
#include <vector>

#include "excesslab/core.hpp"
#include "excesslab/extremal.hpp"
#include "excesslab/functionals.hpp"
#include "excesslab/inequalities.hpp"
#include "excesslab/scalar_analysis.hpp"
#include "excesslab/search.hpp"

namespace excesslab {

/// Thrown for malformed input files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"atoms": [{"x": .., "y": .., "w": ..}, ...]}; non-numeric or non-finite
/// fields raise ParseError, invariant violations DomainError.
JointDistribution parse_distribution(const std::string& text);
JointDistribution load_distribution(const std::string& path);
std::string distribution_json(const JointDistribution& dist);

inline constexpr const char* kGapCsvHeader = "label,p,theta,lhs,rhs,gap,holds";
inline constexpr const char* kScalarCsvHeader = "p,s,h,h1,h2,h2_prime";

/// %.17g rendering used by every CSV writer.
std::string format_number(double v);

std::string gap_csv_row(const GapReport& r);
std::string gap_reports_json(const std::vector<GapReport>& reports);
std::string sweep_json(const SweepSummary& s);
std::string maximize_json(const MomentSpec& spec, const Exponents& e,
                          const MaximizeOptions& options,
                          const MaximizeResult& result);
std::string certificate_json(const ViolationCertificate& c);
std::string scalar_csv_row(double p, double s, const HChain& h);

/// Writes text to path, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

}  // namespace excesslab
