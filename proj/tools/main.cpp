#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "szego/csv.hpp"
#include "szego/entropy.hpp"
#include "szego/errors.hpp"
#include "szego/experiments.hpp"
#include "szego/kernels.hpp"
#include "szego/moments.hpp"
#include "szego/opuc.hpp"
#include "szego/parallel.hpp"
#include "szego/svg.hpp"
#include "szego/weights.hpp"

namespace {

using Complex = std::complex<double>;
using nlohmann::json;

std::string quote_arg(const std::string& a) {
  if (a.find_first_of(" \t\"'") == std::string::npos) return a;
  std::string q = "'";
  for (char c : a) {
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  }
  return q + "'";
}

std::string invocation(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += quote_arg(argv[i]);
  }
  return s;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw szego::InvalidArgument("cannot parse " + what + " from '" + text + "'");
  }
}

// Angle in radians; a "pi" suffix multiplies by pi, so 0.2pi is exact.
double parse_angle(const std::string& text, const std::string& what) {
  if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
    std::string head = text.substr(0, text.size() - 2);
    if (head.empty() || head == "+") return std::numbers::pi;
    if (head == "-") return -std::numbers::pi;
    return parse_number(head, what) * std::numbers::pi;
  }
  return parse_number(text, what);
}

Complex unit_point(const std::string& angle_text, const std::string& what) {
  double a = parse_angle(angle_text, what);
  return {std::cos(a), std::sin(a)};
}

// "re" or "re,im".
Complex parse_point(const std::string& text, const std::string& what) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos) return {parse_number(text, what), 0.0};
  return {parse_number(text.substr(0, comma), what + " (real part)"),
          parse_number(text.substr(comma + 1), what + " (imaginary part)")};
}

void deliver(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw szego::IoError("cannot open output file '" + path + "'");
  f << content;
  f.flush();
  if (!f.good()) throw szego::IoError("failed writing output file '" + path + "'");
}

struct CommonOpts {
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
  double tol = 1e-12;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out, "output file (default: stdout)");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores");
  cmd->add_option("--tol", c.tol, "relative quadrature tolerance per moment")
      ->check(CLI::PositiveNumber);
}

json fit_to_json(const szego::EntropyFit& f) {
  return json{{"model", f.model == szego::EntropyFitModel::plain ? "plain" : "log_corrected"},
              {"beta", f.beta},
              {"C", f.C},
              {"max_rel_residual", f.max_rel_residual}};
}

szego::KernelStrategy parse_strategy(const std::string& s) {
  if (s == "sum") return szego::KernelStrategy::sum_form;
  if (s == "cd") return szego::KernelStrategy::cd_form;
  throw szego::InvalidArgument("unknown kernel strategy '" + s + "'");
}

void plot_series(const std::string& path, const std::string& title,
                 const std::string& xlab, const std::string& ylab,
                 const std::vector<szego::SvgSeries>& series,
                 const std::string& config) {
  std::ostringstream os;
  szego::write_loglog_svg(os, title, xlab, ylab, series, config);
  deliver(os.str(), path);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cmdline = invocation(argc, argv);
  const std::string config = "command: " + cmdline;

  CLI::App app{"orthogonal polynomials on the unit circle: moments, recurrence "
               "coefficients, reproducing kernels, universality deviations and "
               "entropy scaling"};
  app.require_subcommand(1);
  std::function<void()> run;

  // moments
  auto* cmd_moments = app.add_subcommand("moments", "trigonometric moments of a weight");
  {
    static std::string weight;
    static std::size_t n = 0;
    static CommonOpts c;
    cmd_moments->add_option("--weight", weight, "weight spec, e.g. lebesgue | poisson:0.5 | holder:0.4 | file:w.csv")->required();
    cmd_moments->add_option("--n", n, "number of moments c_0..c_{n-1}")->required()->check(CLI::PositiveNumber);
    add_common(cmd_moments, c);
    cmd_moments->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        szego::CircleWeight w = szego::make_weight(weight);
        szego::MomentSequence m = szego::compute_moments(w, n, c.tol);
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline}, {"weight", w.name()}, {"normalized", m.normalized}};
          for (std::size_t i = 0; i < m.n; ++i) {
            j["c"].push_back({m.c[i].real(), m.c[i].imag()});
            j["err_estimate"].push_back(m.error_estimate[i]);
          }
          os << j.dump(2) << "\n";
        } else {
          szego::write_moments_csv(os, m, config);
        }
        deliver(os.str(), c.out);
      };
    });
  }

  // verblunsky
  auto* cmd_verb = app.add_subcommand("verblunsky", "recurrence coefficients a_0..a_{n-1} from the moment matrix");
  {
    static std::string weight;
    static std::size_t n = 0;
    static CommonOpts c;
    cmd_verb->add_option("--weight", weight, "weight spec")->required();
    cmd_verb->add_option("--n", n, "number of coefficients")->required()->check(CLI::PositiveNumber);
    add_common(cmd_verb, c);
    cmd_verb->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        szego::CircleWeight w = szego::make_weight(weight);
        szego::MomentSequence m = szego::compute_moments(w, n + 1, c.tol);
        szego::VerblunskyCoefficients v = szego::levinson(m);
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline}, {"weight", w.name()}, {"c0", v.c0}};
          j["a"] = json::array();
          for (const Complex& a : v.a) j["a"].push_back({a.real(), a.imag()});
          j["kappa"] = v.kappa;
          os << j.dump(2) << "\n";
        } else {
          szego::write_verblunsky_csv(os, v, config);
        }
        deliver(os.str(), c.out);
      };
    });
  }

  // kernel-ratio
  auto* cmd_kr = app.add_subcommand("kernel-ratio", "normalized kernel ratio and its deviation from the universal one");
  {
    static std::string weight, zeta = "0", z1, z2, strategy = "sum";
    static std::size_t n = 0;
    static CommonOpts c;
    cmd_kr->add_option("--weight", weight, "weight spec")->required();
    cmd_kr->add_option("--n", n, "kernel order")->required()->check(CLI::PositiveNumber);
    cmd_kr->add_option("--zeta", zeta, "reference angle on the circle, e.g. 0.2pi");
    cmd_kr->add_option("--z1", z1, "first point, 're' or 're,im' (default: zeta)");
    cmd_kr->add_option("--z2", z2, "second point (default: zeta)");
    cmd_kr->add_option("--strategy", strategy, "kernel evaluation path")->check(CLI::IsMember({"sum", "cd"}));
    add_common(cmd_kr, c);
    cmd_kr->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        szego::CircleWeight w = szego::make_weight(weight);
        Complex zc = unit_point(zeta, "--zeta");
        Complex p1 = z1.empty() ? zc : parse_point(z1, "--z1");
        Complex p2 = z2.empty() ? zc : parse_point(z2, "--z2");
        szego::KernelContext ctx =
            szego::make_kernel_context(w, n, parse_strategy(strategy), c.tol);
        szego::DeviationSample s = ctx.deviation(zc, p1, p2);
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline},
                 {"weight", w.name()},
                 {"n", s.n},
                 {"zeta", {s.zeta.real(), s.zeta.imag()}},
                 {"z1", {s.z1.real(), s.z1.imag()}},
                 {"z2", {s.z2.real(), s.z2.imag()}},
                 {"ratio", {s.ratio.real(), s.ratio.imag()}},
                 {"universal", {s.universal.real(), s.universal.imag()}},
                 {"deviation", s.deviation}};
          os << j.dump(2) << "\n";
        } else {
          szego::write_deviation_csv(os, {s}, config);
        }
        deliver(os.str(), c.out);
      };
    });
  }

  // entropy
  auto* cmd_ent = app.add_subcommand("entropy", "relative entropy K at one point of the disk");
  {
    static std::string weight, z;
    static CommonOpts c;
    cmd_ent->add_option("--weight", weight, "weight spec")->required();
    cmd_ent->add_option("--z", z, "evaluation point, 're' or 're,im', |z| < 1")->required();
    add_common(cmd_ent, c);
    cmd_ent->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        szego::CircleWeight w = szego::make_weight(weight);
        Complex zc = parse_point(z, "--z");
        double K = szego::entropy_at(w, zc, c.tol);
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline},
                 {"weight", w.name()},
                 {"z", {zc.real(), zc.imag()}},
                 {"K", K}};
          os << j.dump(2) << "\n";
        } else {
          szego::write_config_echo(os, config);
          os << "re_z,im_z,K\n";
          os << szego::format_double(zc.real()) << ',' << szego::format_double(zc.imag())
             << ',' << szego::format_double(K) << "\n";
        }
        deliver(os.str(), c.out);
      };
    });
  }

  // entropy-fit
  auto* cmd_fit = app.add_subcommand("entropy-fit", "entropy profile K(rho zeta) on a log grid of 1-rho, with power-law fits");
  {
    static std::string weight, zeta = "0", model = "both", svg;
    static double eps_min = 1e-4, eps_max = 1e-1;
    static std::size_t points = 33;
    static CommonOpts c;
    cmd_fit->add_option("--weight", weight, "weight spec")->required();
    cmd_fit->add_option("--zeta", zeta, "ray direction angle, e.g. 0.2pi");
    cmd_fit->add_option("--eps-min", eps_min, "smallest 1-rho")->check(CLI::PositiveNumber);
    cmd_fit->add_option("--eps-max", eps_max, "largest 1-rho")->check(CLI::PositiveNumber);
    cmd_fit->add_option("--points", points, "grid points")->check(CLI::PositiveNumber);
    cmd_fit->add_option("--model", model, "fit model")->check(CLI::IsMember({"plain", "logcorr", "both"}));
    cmd_fit->add_option("--svg", svg, "also write a log-log plot here");
    add_common(cmd_fit, c);
    cmd_fit->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        szego::CircleWeight w = szego::make_weight(weight);
        Complex zc = unit_point(zeta, "--zeta");
        szego::EntropyProfile p =
            szego::entropy_profile(w, zc, eps_min, eps_max, points, c.tol);
        szego::ProfileFits fits;
        if (model != "logcorr")
          fits.plain = szego::fit_entropy_exponent(p, szego::EntropyFitModel::plain);
        if (model != "plain")
          fits.log_corrected =
              szego::fit_entropy_exponent(p, szego::EntropyFitModel::log_corrected);
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline},
                 {"weight", w.name()},
                 {"zeta", {zc.real(), zc.imag()}}};
          for (std::size_t i = 0; i < p.rho.size(); ++i) {
            j["rho"].push_back(p.rho[i]);
            j["eps"].push_back(1.0 - p.rho[i]);
            j["K"].push_back(p.K[i]);
          }
          if (fits.plain) j["fit_plain"] = fit_to_json(*fits.plain);
          if (fits.log_corrected) j["fit_log_corrected"] = fit_to_json(*fits.log_corrected);
          os << j.dump(2) << "\n";
        } else {
          szego::write_profile_csv(os, p, fits, config);
        }
        deliver(os.str(), c.out);
        if (!svg.empty()) {
          std::vector<szego::SvgSeries> series;
          szego::SvgSeries data{"K", "#1f77b4", {}, {}};
          for (std::size_t i = 0; i < p.rho.size(); ++i) {
            data.x.push_back(1.0 - p.rho[i]);
            data.y.push_back(p.K[i]);
          }
          series.push_back(std::move(data));
          auto fit_series = [&](const szego::EntropyFit& f, const char* label,
                                const char* color) {
            szego::SvgSeries sr{label, color, {}, {}};
            for (std::size_t i = 0; i < p.rho.size(); ++i) {
              double eps = 1.0 - p.rho[i];
              double x = (f.model == szego::EntropyFitModel::plain)
                             ? eps
                             : eps * std::abs(std::log(eps));
              sr.x.push_back(eps);
              sr.y.push_back(f.C * std::pow(x, f.beta));
            }
            series.push_back(std::move(sr));
          };
          if (fits.plain) fit_series(*fits.plain, "plain fit", "#d62728");
          if (fits.log_corrected)
            fit_series(*fits.log_corrected, "log-corrected fit", "#2ca02c");
          plot_series(svg, "entropy along the ray to zeta", "1 - rho", "K", series,
                      config);
        }
      };
    });
  }

  // rate
  auto* cmd_rate = app.add_subcommand("rate", "diagonal deviation D(n) at x_n = 1 - 1/n for n = step..N");
  {
    static std::string weight, strategy = "sum", svg;
    static std::size_t N = 0, step = 0;
    static CommonOpts c;
    cmd_rate->add_option("--weight", weight, "weight spec")->required();
    cmd_rate->add_option("--N", N, "largest n")->required()->check(CLI::PositiveNumber);
    cmd_rate->add_option("--step", step, "n increment")->required()->check(CLI::PositiveNumber);
    cmd_rate->add_option("--strategy", strategy, "kernel evaluation path")->check(CLI::IsMember({"sum", "cd"}));
    cmd_rate->add_option("--svg", svg, "also write a log-log plot here");
    add_common(cmd_rate, c);
    cmd_rate->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        szego::CircleWeight w = szego::make_weight(weight);
        szego::RateOptions opt{c.tol, parse_strategy(strategy)};
        szego::RateTable t = szego::rate_experiment(w, N, step, opt);
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline}, {"weight", t.weight}, {"N", t.N}, {"step", t.step}};
          if (t.tail_slope) j["tail_slope"] = *t.tail_slope;
          j["rows"] = json::array();
          for (const szego::RateRecord& r : t.rows) {
            json row{{"n", r.n}, {"x_n", r.x_n}, {"D", r.D}};
            if (r.alpha_cand) row["alphaCand"] = *r.alpha_cand;
            if (r.c_alpha_cand) row["CalphaCand"] = *r.c_alpha_cand;
            j["rows"].push_back(std::move(row));
          }
          os << j.dump(2) << "\n";
        } else {
          szego::write_rate_csv(os, t, config);
        }
        deliver(os.str(), c.out);
        if (!svg.empty()) {
          szego::SvgSeries data{"D(n)", "#1f77b4", {}, {}};
          for (const szego::RateRecord& r : t.rows) {
            data.x.push_back(static_cast<double>(r.n));
            data.y.push_back(r.D);
          }
          plot_series(svg, "diagonal deviation at x_n = 1 - 1/n", "n", "D", {data},
                      config);
        }
      };
    });
  }

  // figure2
  auto* cmd_f2 = app.add_subcommand("figure2", "two-curve comparison: f1 = D(n) against f2 = C n^{-s}");
  {
    static std::string weight, strategy = "sum", plot;
    static double s = 0;
    static std::size_t N = 2000, step = 20;
    static CommonOpts c;
    cmd_f2->add_option("--s", s, "decay exponent for the reference curve")->required()->check(CLI::PositiveNumber);
    cmd_f2->add_option("--weight", weight, "weight spec (default holder:<s>)");
    cmd_f2->add_option("--N", N, "largest n")->check(CLI::PositiveNumber);
    cmd_f2->add_option("--step", step, "n increment")->check(CLI::PositiveNumber);
    cmd_f2->add_option("--strategy", strategy, "kernel evaluation path")->check(CLI::IsMember({"sum", "cd"}));
    cmd_f2->add_option("--plot", plot, "write a log-log SVG with both curves here");
    add_common(cmd_f2, c);
    cmd_f2->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        std::ostringstream wspec;
        if (weight.empty()) {
          wspec << "holder:" << s;
        } else {
          wspec << weight;
        }
        szego::CircleWeight w = szego::make_weight(wspec.str());
        szego::RateOptions opt{c.tol, parse_strategy(strategy)};
        szego::Figure2Table t = szego::figure2_data(w, s, N, step, opt);
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline}, {"weight", t.weight}, {"s", t.s},
                 {"N", t.N},           {"step", t.step},     {"tail_ok", t.tail_ok}};
          if (t.C) j["C"] = *t.C;
          if (t.tail_slope) j["tail_slope"] = *t.tail_slope;
          j["rows"] = json::array();
          for (const szego::Figure2Row& r : t.rows) {
            json row{{"n", r.n}, {"f1", r.f1}};
            if (r.f2) row["f2"] = *r.f2;
            j["rows"].push_back(std::move(row));
          }
          os << j.dump(2) << "\n";
        } else {
          szego::write_figure2_csv(os, t, config);
        }
        deliver(os.str(), c.out);
        if (!plot.empty()) {
          szego::SvgSeries f1{"f1 = D(n)", "#1f77b4", {}, {}};
          szego::SvgSeries f2{"f2 = C n^{-s}", "#d62728", {}, {}};
          for (const szego::Figure2Row& r : t.rows) {
            f1.x.push_back(static_cast<double>(r.n));
            f1.y.push_back(r.f1);
            if (r.f2) {
              f2.x.push_back(static_cast<double>(r.n));
              f2.y.push_back(*r.f2);
            }
          }
          std::vector<szego::SvgSeries> series{std::move(f1)};
          if (!f2.x.empty()) series.push_back(std::move(f2));
          plot_series(plot, "deviation decay against the candidate power law", "n",
                      "f", series, config);
        }
      };
    });
  }

  // poisson-check
  auto* cmd_pc = app.add_subcommand("poisson-check", "n * sup-deviation band for the poisson weight near zeta = 1");
  {
    static double lambda = 0.5;
    static std::vector<std::size_t> ns{100, 200, 400, 800};
    static std::size_t grid_points = 41;
    static std::string svg;
    static CommonOpts c;
    cmd_pc->add_option("--lambda", lambda, "poisson parameter, |lambda| < 1");
    cmd_pc->add_option("--n", ns, "kernel orders to test")->expected(-1);
    cmd_pc->add_option("--grid-points", grid_points, "points per axis of the (u, v) grid")->check(CLI::PositiveNumber);
    cmd_pc->add_option("--svg", svg, "also write a log-log plot here");
    add_common(cmd_pc, c);
    cmd_pc->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        szego::PoissonCheckTable t =
            szego::poisson_example_check(Complex(lambda, 0), ns, grid_points);
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline}, {"lambda", {t.lambda.real(), t.lambda.imag()}}};
          if (t.band_ratio) j["band_ratio"] = *t.band_ratio;
          j["rows"] = json::array();
          for (const szego::PoissonCheckRow& r : t.rows)
            j["rows"].push_back({{"n", r.n},
                                 {"sup_deviation", r.sup_deviation},
                                 {"n_times_sup", r.n_times_sup}});
          os << j.dump(2) << "\n";
        } else {
          szego::write_poisson_check_csv(os, t, config);
        }
        deliver(os.str(), c.out);
        if (!svg.empty()) {
          szego::SvgSeries sup{"sup deviation", "#1f77b4", {}, {}};
          szego::SvgSeries band{"n * sup", "#d62728", {}, {}};
          for (const szego::PoissonCheckRow& r : t.rows) {
            sup.x.push_back(static_cast<double>(r.n));
            sup.y.push_back(r.sup_deviation);
            band.x.push_back(static_cast<double>(r.n));
            band.y.push_back(r.n_times_sup);
          }
          plot_series(svg, "sup deviation near the circle", "n", "value",
                      {std::move(sup), std::move(band)}, config);
        }
      };
    });
  }

  // theorem1
  auto* cmd_t1 = app.add_subcommand("theorem1", "kernel comparison bound: max deviation on B(zeta, A/n) against e^{4A} sqrt(sup K)");
  {
    static std::string weight, zeta = "0";
    static double A = 1.0, grid_density = 1.0;
    static std::vector<std::size_t> ns{64, 128, 256, 512};
    static CommonOpts c;
    cmd_t1->add_option("--weight", weight, "weight spec")->required();
    cmd_t1->add_option("--zeta", zeta, "center angle on the circle, e.g. 0.2pi");
    cmd_t1->add_option("--A", A, "disk radius constant (radius A/n)")->check(CLI::PositiveNumber);
    cmd_t1->add_option("--n", ns, "kernel orders to test")->expected(-1);
    cmd_t1->add_option("--grid-density", grid_density, "polar grid density multiplier")->check(CLI::PositiveNumber);
    add_common(cmd_t1, c);
    cmd_t1->callback([&] {
      run = [&] {
        szego::set_thread_count(c.threads);
        szego::CircleWeight w = szego::make_weight(weight);
        Complex zc = unit_point(zeta, "--zeta");
        szego::RateOptions opt{c.tol, szego::KernelStrategy::cd_form};
        std::vector<szego::Theorem1Report> reports;
        reports.reserve(ns.size());
        for (std::size_t n : ns)
          reports.push_back(szego::theorem1_check(w, zc, A, n, grid_density, opt));
        std::ostringstream os;
        if (c.format == "json") {
          json j{{"command", cmdline},
                 {"weight", w.name()},
                 {"zeta", {zc.real(), zc.imag()}},
                 {"A", A}};
          j["rows"] = json::array();
          for (const szego::Theorem1Report& r : reports) {
            json row{{"n", r.n},
                     {"delta", r.delta},
                     {"lhs", r.lhs},
                     {"entropy_sup", r.entropy_sup},
                     {"rhs_core", r.rhs_core}};
            if (r.empirical_ratio) row["empirical_ratio"] = *r.empirical_ratio;
            j["rows"].push_back(std::move(row));
          }
          os << j.dump(2) << "\n";
        } else {
          szego::write_theorem1_csv(os, reports, config);
        }
        deliver(os.str(), c.out);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run) run();
  } catch (const szego::InvalidArgument& e) {
    std::cerr << "error (invalid argument): " << e.what() << "\n";
    return 2;
  } catch (const szego::NumericalError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 3;
  } catch (const szego::IoError& e) {
    std::cerr << "error (io): " << e.what() << "\n";
    return 4;
  }
  return 0;
}
