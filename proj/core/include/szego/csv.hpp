#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "szego/entropy.hpp"
#include "szego/experiments.hpp"
#include "szego/kernels.hpp"
#include "szego/moments.hpp"
#include "szego/opuc.hpp"

namespace szego {

// All numeric output uses 17 significant digits, enough to round-trip
// doubles exactly. Undefined optional fields are written as empty cells.
std::string format_double(double x);

// Comment header reproducing the exact invocation, e.g.
//   # command: szego moments --weight holder:0.4 --n 8
// Every writer emits these lines first when config is nonempty.
void write_config_echo(std::ostream& out, const std::string& config);

void write_moments_csv(std::ostream& out, const MomentSequence& m, const std::string& config);
MomentSequence read_moments_csv(std::istream& in);

void write_verblunsky_csv(std::ostream& out, const VerblunskyCoefficients& v, const std::string& config);
VerblunskyCoefficients read_verblunsky_csv(std::istream& in);

void write_deviation_csv(std::ostream& out, const std::vector<DeviationSample>& samples, const std::string& config);

struct ProfileFits {
  std::optional<EntropyFit> plain;
  std::optional<EntropyFit> log_corrected;
};
void write_profile_csv(std::ostream& out, const EntropyProfile& p, const ProfileFits& fits, const std::string& config);

void write_rate_csv(std::ostream& out, const RateTable& t, const std::string& config);
RateTable read_rate_csv(std::istream& in);

void write_figure2_csv(std::ostream& out, const Figure2Table& t, const std::string& config);

void write_poisson_check_csv(std::ostream& out, const PoissonCheckTable& t, const std::string& config);

void write_theorem1_csv(std::ostream& out, const std::vector<Theorem1Report>& reports, const std::string& config);

// theta,w sample file for custom weights (used by make_weight("file:...")).
CircleWeight read_weight_samples_csv(std::istream& in, const std::string& name);

}  // namespace szego
