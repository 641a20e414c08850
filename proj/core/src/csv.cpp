#include "szego/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "szego/errors.hpp"

namespace szego {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_config_echo(std::ostream& out, const std::string& config) {
  if (config.empty()) return;
  std::istringstream lines(config);
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << "\n";
}

namespace {

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& cell, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw IoError("cannot parse " + what + " from '" + cell + "'");
  }
}

std::size_t parse_index(const std::string& cell, const std::string& what) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument("trailing");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw IoError("cannot parse " + what + " from '" + cell + "'");
  }
}

// Reads a CSV body: "# key: value" comments go into meta (other comments are
// ignored), the first non-comment line is the header, the rest are rows.
struct CsvBody {
  std::map<std::string, std::string> meta;
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

CsvBody read_body(std::istream& in) {
  CsvBody body;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t colon = line.find(':');
      if (colon != std::string::npos) {
        std::string key = line.substr(1, colon - 1);
        std::string value = line.substr(colon + 1);
        while (!key.empty() && key.front() == ' ') key.erase(key.begin());
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        body.meta[key] = value;
      }
      continue;
    }
    if (body.header.empty()) {
      body.header = line;
      continue;
    }
    body.rows.push_back(split_csv(line));
  }
  return body;
}

void require_header(const CsvBody& body, const std::string& expected) {
  if (body.header != expected)
    throw IoError("unexpected CSV header '" + body.header + "' (expected '" +
                  expected + "')");
}

std::optional<double> opt_field(const std::vector<std::string>& row, std::size_t i,
                                const std::string& what) {
  if (i >= row.size() || row[i].empty()) return std::nullopt;
  return parse_double(row[i], what);
}

}  // namespace

void write_moments_csv(std::ostream& out, const MomentSequence& m,
                       const std::string& config) {
  write_config_echo(out, config);
  out << "# normalized: " << (m.normalized ? 1 : 0) << "\n";
  out << "j,re_c,im_c,err_estimate\n";
  for (std::size_t j = 0; j < m.n; ++j)
    out << j << ',' << format_double(m.c[j].real()) << ','
        << format_double(m.c[j].imag()) << ','
        << format_double(j < m.error_estimate.size() ? m.error_estimate[j] : 0.0)
        << "\n";
}

MomentSequence read_moments_csv(std::istream& in) {
  CsvBody body = read_body(in);
  require_header(body, "j,re_c,im_c,err_estimate");
  MomentSequence m;
  for (const auto& row : body.rows) {
    if (row.size() != 4) throw IoError("moments CSV row needs 4 cells");
    if (parse_index(row[0], "moment index") != m.c.size())
      throw IoError("moments CSV rows must be consecutive from 0");
    m.c.emplace_back(parse_double(row[1], "re_c"), parse_double(row[2], "im_c"));
    m.error_estimate.push_back(parse_double(row[3], "error_estimate"));
  }
  if (m.c.empty()) throw IoError("moments CSV has no rows");
  m.n = m.c.size();
  auto it = body.meta.find("normalized");
  m.normalized = it != body.meta.end() ? it->second == "1"
                                       : std::abs(m.c[0].real() - 1.0) <= 1e-10;
  return m;
}

void write_verblunsky_csv(std::ostream& out, const VerblunskyCoefficients& v,
                          const std::string& config) {
  write_config_echo(out, config);
  out << "# c0: " << format_double(v.c0) << "\n";
  out << "k,re_a,im_a,kappa\n";
  for (std::size_t k = 0; k < v.a.size(); ++k)
    out << k << ',' << format_double(v.a[k].real()) << ','
        << format_double(v.a[k].imag()) << ',' << format_double(v.kappa[k]) << "\n";
  // kappa has one more entry than a; the last row carries it alone.
  out << v.a.size() << ",,," << format_double(v.kappa[v.a.size()]) << "\n";
}

VerblunskyCoefficients read_verblunsky_csv(std::istream& in) {
  CsvBody body = read_body(in);
  require_header(body, "k,re_a,im_a,kappa");
  VerblunskyCoefficients v;
  for (const auto& row : body.rows) {
    if (row.size() != 4) throw IoError("coefficient CSV row needs 4 cells");
    if (parse_index(row[0], "coefficient index") != v.kappa.size())
      throw IoError("coefficient CSV rows must be consecutive from 0");
    const bool has_a = !row[1].empty() || !row[2].empty();
    if (has_a) {
      if (v.kappa.size() != v.a.size())
        throw IoError("coefficient CSV: only the final row may omit a");
      v.a.emplace_back(parse_double(row[1], "re_a"), parse_double(row[2], "im_a"));
    }
    v.kappa.push_back(parse_double(row[3], "kappa"));
  }
  if (v.kappa.size() != v.a.size() + 1)
    throw IoError("coefficient CSV: kappa must have exactly one more row than a");
  auto it = body.meta.find("c0");
  v.c0 = it != body.meta.end() ? parse_double(it->second, "c0")
                               : 1.0 / (v.kappa[0] * v.kappa[0]);
  return v;
}

void write_deviation_csv(std::ostream& out, const std::vector<DeviationSample>& samples,
                         const std::string& config) {
  write_config_echo(out, config);
  out << "n,re_zeta,im_zeta,re_z1,im_z1,re_z2,im_z2,re_ratio,im_ratio,"
         "re_universal,im_universal,deviation\n";
  for (const DeviationSample& s : samples)
    out << s.n << ',' << format_double(s.zeta.real()) << ','
        << format_double(s.zeta.imag()) << ',' << format_double(s.z1.real()) << ','
        << format_double(s.z1.imag()) << ',' << format_double(s.z2.real()) << ','
        << format_double(s.z2.imag()) << ',' << format_double(s.ratio.real()) << ','
        << format_double(s.ratio.imag()) << ',' << format_double(s.universal.real())
        << ',' << format_double(s.universal.imag()) << ','
        << format_double(s.deviation) << "\n";
}

namespace {

void write_fit_comment(std::ostream& out, const char* label,
                       const std::optional<EntropyFit>& fit) {
  if (!fit) return;
  out << "# fit_" << label << ": beta=" << format_double(fit->beta)
      << " C=" << format_double(fit->C)
      << " max_rel_residual=" << format_double(fit->max_rel_residual) << "\n";
}

}  // namespace

void write_profile_csv(std::ostream& out, const EntropyProfile& p,
                       const ProfileFits& fits, const std::string& config) {
  write_config_echo(out, config);
  out << "# zeta: " << format_double(p.zeta.real()) << ' '
      << format_double(p.zeta.imag()) << "\n";
  write_fit_comment(out, "plain", fits.plain);
  write_fit_comment(out, "log_corrected", fits.log_corrected);
  out << "rho,eps,K\n";
  for (std::size_t i = 0; i < p.rho.size(); ++i)
    out << format_double(p.rho[i]) << ',' << format_double(1.0 - p.rho[i]) << ','
        << format_double(p.K[i]) << "\n";
}

void write_rate_csv(std::ostream& out, const RateTable& t, const std::string& config) {
  write_config_echo(out, config);
  out << "# weight: " << t.weight << "\n";
  out << "# N: " << t.N << "\n";
  out << "# step: " << t.step << "\n";
  if (t.tail_slope) out << "# tail_slope: " << format_double(*t.tail_slope) << "\n";
  out << "n,x_n,D,alphaCand,CalphaCand\n";
  for (const RateRecord& r : t.rows)
    out << r.n << ',' << format_double(r.x_n) << ',' << format_double(r.D) << ','
        << opt_cell(r.alpha_cand) << ',' << opt_cell(r.c_alpha_cand) << "\n";
}

RateTable read_rate_csv(std::istream& in) {
  CsvBody body = read_body(in);
  require_header(body, "n,x_n,D,alphaCand,CalphaCand");
  RateTable t;
  if (auto it = body.meta.find("weight"); it != body.meta.end()) t.weight = it->second;
  if (auto it = body.meta.find("N"); it != body.meta.end())
    t.N = parse_index(it->second, "N");
  if (auto it = body.meta.find("step"); it != body.meta.end())
    t.step = parse_index(it->second, "step");
  if (auto it = body.meta.find("tail_slope"); it != body.meta.end())
    t.tail_slope = parse_double(it->second, "tail_slope");
  for (const auto& row : body.rows) {
    if (row.size() != 5) throw IoError("rate CSV row needs 5 cells");
    RateRecord r;
    r.n = parse_index(row[0], "n");
    r.x_n = parse_double(row[1], "x_n");
    r.D = parse_double(row[2], "D");
    r.alpha_cand = opt_field(row, 3, "alphaCand");
    r.c_alpha_cand = opt_field(row, 4, "CalphaCand");
    t.rows.push_back(r);
  }
  if (t.rows.empty()) throw IoError("rate CSV has no rows");
  if (t.N == 0) t.N = t.rows.back().n;
  if (t.step == 0) t.step = t.rows.front().n;
  return t;
}

void write_figure2_csv(std::ostream& out, const Figure2Table& t,
                       const std::string& config) {
  write_config_echo(out, config);
  out << "# weight: " << t.weight << "\n";
  out << "# s: " << format_double(t.s) << "\n";
  out << "# N: " << t.N << "\n";
  out << "# step: " << t.step << "\n";
  if (t.C) out << "# C: " << format_double(*t.C) << "\n";
  out << "# tail_ok: " << (t.tail_ok ? 1 : 0) << "\n";
  if (t.tail_slope) out << "# tail_slope: " << format_double(*t.tail_slope) << "\n";
  out << "n,f1,f2\n";
  for (const Figure2Row& r : t.rows)
    out << r.n << ',' << format_double(r.f1) << ',' << opt_cell(r.f2) << "\n";
}

void write_poisson_check_csv(std::ostream& out, const PoissonCheckTable& t,
                             const std::string& config) {
  write_config_echo(out, config);
  out << "# lambda: " << format_double(t.lambda.real()) << ' '
      << format_double(t.lambda.imag()) << "\n";
  if (t.band_ratio) out << "# band_ratio: " << format_double(*t.band_ratio) << "\n";
  out << "n,sup_deviation,n_times_sup\n";
  for (const PoissonCheckRow& r : t.rows)
    out << r.n << ',' << format_double(r.sup_deviation) << ','
        << format_double(r.n_times_sup) << "\n";
}

void write_theorem1_csv(std::ostream& out, const std::vector<Theorem1Report>& reports,
                        const std::string& config) {
  write_config_echo(out, config);
  if (!reports.empty()) {
    // A sweep shares the weight, the point and the radius constant.
    const Theorem1Report& r0 = reports.front();
    out << "# weight: " << r0.weight << "\n";
    out << "# zeta: " << format_double(r0.zeta.real()) << ' '
        << format_double(r0.zeta.imag()) << "\n";
    out << "# A: " << format_double(r0.A) << "\n";
  }
  out << "n,lhs,entropy_sup,rhs_core,empirical_ratio\n";
  for (const Theorem1Report& r : reports)
    out << r.n << ',' << format_double(r.lhs) << ',' << format_double(r.entropy_sup)
        << ',' << format_double(r.rhs_core) << ',' << opt_cell(r.empirical_ratio)
        << "\n";
}

CircleWeight read_weight_samples_csv(std::istream& in, const std::string& name) {
  std::vector<double> theta, values;
  std::string line;
  bool first_data = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 2)
      throw IoError("weight sample file: each row needs exactly 'theta,w'");
    if (first_data) {
      first_data = false;
      // optional header line
      if (cells[0] == "theta") continue;
    }
    theta.push_back(parse_double(cells[0], "theta"));
    values.push_back(parse_double(cells[1], "w"));
  }
  if (theta.empty()) throw IoError("weight sample file: no data rows");
  return CircleWeight::from_samples(name, theta, values);
}

CircleWeight load_weight_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open weight sample file '" + path + "'");
  return read_weight_samples_csv(in, "file:" + path);
}

}  // namespace szego
