#include "fstsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fstsp {

std::vector<int> Instance::eligible_customers() const {
  std::vector<int> out;
  for (int i = 1; i < n; ++i)
    if (eligible[i]) out.push_back(i);
  return out;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Ponza: return "ponza";
    case Family::AgatzUniform: return "agatz-uniform";
    case Family::AgatzSingleCenter: return "agatz-single";
    case Family::AgatzDoubleCenter: return "agatz-double";
    case Family::TsplibDerived: return "tsplib";
  }
  return "?";
}

static double metric_distance(const std::array<double, 2>& a, const std::array<double, 2>& b,
                              Metric m) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  if (m == Metric::Manhattan) return std::abs(dx) + std::abs(dy);
  return std::hypot(dx, dy);
}

std::pair<TimeMatrix, TimeMatrix> build_matrices(const std::vector<std::array<double, 2>>& coords,
                                                 double truck_speed_kmh, double drone_speed_kmh,
                                                 Metric truck_metric, Metric drone_metric) {
  if (truck_speed_kmh <= 0.0 || drone_speed_kmh <= 0.0)
    throw std::invalid_argument("vehicle speeds must be positive");
  const int n = static_cast<int>(coords.size());
  for (const auto& c : coords)
    if (!std::isfinite(c[0]) || !std::isfinite(c[1]))
      throw std::invalid_argument("non-finite coordinate");
  TimeMatrix truck(n), drone(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double tt = metric_distance(coords[i], coords[j], truck_metric) / truck_speed_kmh * 60.0;
      const double dt = metric_distance(coords[i], coords[j], drone_metric) / drone_speed_kmh * 60.0;
      truck(i, j) = truck(j, i) = tt;
      drone(i, j) = drone(j, i) = dt;
    }
  }
  return {std::move(truck), std::move(drone)};
}

// Uniform subset of {1..n-1} of the given size, without replacement.
static std::vector<bool> sample_eligible(int n, int count, Rng& rng) {
  std::vector<int> ids;
  for (int i = 1; i < n; ++i) ids.push_back(i);
  rng.shuffle(ids);
  std::vector<bool> out(n, false);
  for (int k = 0; k < count && k < static_cast<int>(ids.size()); ++k) out[ids[k]] = true;
  return out;
}

Instance generate(const GeneratorParams& p) {
  if (p.n < 1) throw std::invalid_argument("generator requires n >= 1");
  Rng rng(p.rng_seed);
  Instance inst;
  inst.n = p.n;
  inst.name = family_name(p.family) + "-n" + std::to_string(p.n) + "-s" + std::to_string(p.rng_seed);

  switch (p.family) {
    case Family::Ponza: {
      // 32km x 32km map, depot pinned at the origin, shared road network
      // for both vehicles (Euclidean over each speed).
      inst.variant = Variant::FSTSP;
      inst.truck_speed_kmh = p.truck_speed_kmh > 0 ? p.truck_speed_kmh : 56.32;
      inst.drone_speed_kmh = p.drone_speed_kmh > 0 ? p.drone_speed_kmh : 80.47;
      inst.endurance_e = 24.0;
      inst.service_launch_sl = 0.6;
      inst.service_return_sr = 0.5;
      inst.coords.push_back({0.0, 0.0});
      for (int i = 1; i < p.n; ++i) inst.coords.push_back({rng.range(0.0, 32.0), rng.range(0.0, 32.0)});
      // The source tables pair n' = 0.8 n with n-1 customers.
      const int count = std::min(p.n - 1, static_cast<int>(std::lround(0.8 * p.n)));
      inst.eligible = sample_eligible(p.n, count, rng);
      auto [tm, dm] = build_matrices(inst.coords, inst.truck_speed_kmh, inst.drone_speed_kmh,
                                     Metric::Euclidean, Metric::Euclidean);
      inst.truck_time = std::move(tm);
      inst.drone_time = std::move(dm);
      break;
    }
    case Family::AgatzUniform:
    case Family::AgatzSingleCenter:
    case Family::AgatzDoubleCenter: {
      if (p.alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
      inst.variant = Variant::TSPD;
      inst.endurance_e = kInfinity;
      inst.service_launch_sl = 0.0;
      inst.service_return_sr = 0.0;
      // Unitless distances: a 60 km/h truck makes time equal to distance.
      inst.truck_speed_kmh = 60.0;
      inst.drone_speed_kmh = 60.0 * p.alpha;
      inst.name += "-a" + std::to_string(static_cast<int>(std::lround(p.alpha)));
      for (int i = 0; i < p.n; ++i) {
        std::array<double, 2> c{};
        if (p.family == Family::AgatzUniform) {
          c = {rng.range(0.0, 100.0), rng.range(0.0, 100.0)};
        } else {
          const double angle = rng.range(0.0, 2.0 * 3.14159265358979323846);
          const double radius = std::abs(rng.normal(0.0, p.center_sigma));
          c = {radius * std::cos(angle), radius * std::sin(angle)};
          if (p.family == Family::AgatzDoubleCenter && rng.unit() < p.second_center_prob)
            c[0] += p.second_center_shift;
        }
        inst.coords.push_back(c);
      }
      inst.eligible.assign(p.n, true);
      inst.eligible[0] = false;
      TimeMatrix drone(p.n), truck(p.n);
      for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j) {
          const double d = metric_distance(inst.coords[i], inst.coords[j], Metric::Euclidean);
          drone(i, j) = drone(j, i) = d / p.alpha;
          // truck = alpha * drone holds exactly, not just up to rounding
          truck(i, j) = truck(j, i) = p.alpha * drone(i, j);
        }
      inst.truck_time = std::move(truck);
      inst.drone_time = std::move(drone);
      break;
    }
    case Family::TsplibDerived: {
      if (static_cast<int>(p.tsplib_coords.size()) != p.n)
        throw std::invalid_argument("tsplib family requires n coordinates");
      if (p.eligible_lo > p.eligible_hi || p.eligible_lo < 0.0 || p.eligible_hi > 1.0)
        throw std::invalid_argument("eligible fraction range invalid");
      inst.variant = Variant::FSTSP;
      inst.truck_speed_kmh = p.truck_speed_kmh > 0 ? p.truck_speed_kmh : 40.0;
      inst.drone_speed_kmh = p.drone_speed_kmh > 0 ? p.drone_speed_kmh : 40.0;
      inst.endurance_e = 40.0;
      inst.service_launch_sl = 1.0;
      inst.service_return_sr = 1.0;
      for (const auto& c : p.tsplib_coords)
        inst.coords.push_back({c[0] * p.coord_scale, c[1] * p.coord_scale});
      const double fraction = rng.range(p.eligible_lo, p.eligible_hi);
      const int count = static_cast<int>(std::lround(fraction * (p.n - 1)));
      inst.eligible = sample_eligible(p.n, count, rng);
      auto [tm, dm] = build_matrices(inst.coords, inst.truck_speed_kmh, inst.drone_speed_kmh,
                                     Metric::Manhattan, Metric::Euclidean);
      inst.truck_time = std::move(tm);
      inst.drone_time = std::move(dm);
      break;
    }
  }
  return inst;
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.n < 1) {
    out.push_back("node count must be at least 1");
    return out;
  }
  if (static_cast<int>(inst.coords.size()) != inst.n) out.push_back("coordinate count != n");
  if (static_cast<int>(inst.eligible.size()) != inst.n) out.push_back("eligibility count != n");
  if (inst.truck_time.size() != inst.n) out.push_back("truck matrix size != n");
  if (inst.drone_time.size() != inst.n) out.push_back("drone matrix size != n");
  if (!out.empty()) return out;

  if (inst.eligible[0]) out.push_back("depot marked drone-eligible");
  auto check_matrix = [&](const TimeMatrix& m, const char* label) {
    for (int i = 0; i < inst.n; ++i) {
      if (m(i, i) != 0.0)
        out.push_back(std::string(label) + " matrix has nonzero diagonal at (" +
                      std::to_string(i) + "," + std::to_string(i) + ")");
      for (int j = 0; j < inst.n; ++j) {
        if (!std::isfinite(m(i, j)))
          out.push_back(std::string(label) + " matrix has non-finite entry at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
        else if (m(i, j) < 0.0)
          out.push_back(std::string(label) + " matrix has negative entry at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
        else if (j > i && m(i, j) != m(j, i))
          out.push_back(std::string("asymmetric ") + label + " matrix at (" + std::to_string(i) +
                        "," + std::to_string(j) + ")");
      }
    }
  };
  check_matrix(inst.truck_time, "truck");
  check_matrix(inst.drone_time, "drone");
  if (inst.variant == Variant::TSPD) {
    if (inst.endurance_e != kInfinity) out.push_back("TSPD requires infinite endurance");
    if (inst.service_launch_sl != 0.0 || inst.service_return_sr != 0.0)
      out.push_back("TSPD forbids service times");
  } else {
    if (!(inst.endurance_e >= 0.0)) out.push_back("endurance must be non-negative");
    if (inst.service_launch_sl < 0.0 || inst.service_return_sr < 0.0)
      out.push_back("service times must be non-negative");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical text format
// ---------------------------------------------------------------------------

namespace {

struct Lines {
  std::vector<std::pair<int, std::string>> items;  // (line number, content)
  size_t cursor = 0;

  bool done() const { return cursor >= items.size(); }
  const std::pair<int, std::string>& peek() const { return items[cursor]; }
  std::pair<int, std::string> take() { return items[cursor++]; }
};

Lines split_lines(const std::string& text) {
  Lines out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    out.items.emplace_back(no, line.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

double parse_float(const std::string& s, int line_no) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected a number, got '" + s + "'");
  }
}

long parse_int(const std::string& s, int line_no) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected an integer, got '" + s + "'");
  }
}

// Expects "KEY v1 [KEY2 v2 ...]" on one line; returns the values.
std::vector<std::string> expect_keys(Lines& lines, const std::vector<std::string>& keys) {
  if (lines.done()) throw ParseError(lines.items.empty() ? 0 : lines.items.back().first,
                                     "unexpected end of file, expected " + keys[0]);
  auto [no, content] = lines.take();
  auto toks = tokens_of(content);
  if (toks.size() != keys.size() * 2)
    throw ParseError(no, "expected '" + keys[0] + " <value>' style line");
  std::vector<std::string> values;
  for (size_t k = 0; k < keys.size(); ++k) {
    if (toks[2 * k] != keys[k])
      throw ParseError(no, "expected keyword " + keys[k] + ", got '" + toks[2 * k] + "'");
    values.push_back(toks[2 * k + 1]);
  }
  return values;
}

TimeMatrix parse_matrix(Lines& lines, int n, const char* label) {
  TimeMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (lines.done())
      throw ParseError(lines.items.back().first,
                       std::string("unexpected end of file inside ") + label);
    auto [no, content] = lines.take();
    auto toks = tokens_of(content);
    if (static_cast<int>(toks.size()) != n)
      throw ParseError(no, std::string(label) + " row " + std::to_string(i) + " has " +
                               std::to_string(toks.size()) + " entries, expected " +
                               std::to_string(n));
    for (int j = 0; j < n; ++j) m(i, j) = parse_float(toks[j], no);
  }
  return m;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  Lines lines = split_lines(text);
  Instance inst;

  {
    auto v = expect_keys(lines, {"NAME"});
    inst.name = v[0];
  }
  {
    auto v = expect_keys(lines, {"VARIANT"});
    if (v[0] == "FSTSP") inst.variant = Variant::FSTSP;
    else if (v[0] == "TSPD") inst.variant = Variant::TSPD;
    else throw ParseError(lines.items[lines.cursor - 1].first, "unknown variant '" + v[0] + "'");
  }
  int header_line = lines.items[lines.cursor - 1].first;
  {
    auto v = expect_keys(lines, {"N"});
    long n = parse_int(v[0], lines.items[lines.cursor - 1].first);
    if (n < 1) throw ParseError(lines.items[lines.cursor - 1].first, "N must be >= 1");
    inst.n = static_cast<int>(n);
  }
  {
    auto v = expect_keys(lines, {"TRUCK_SPEED", "DRONE_SPEED"});
    int no = lines.items[lines.cursor - 1].first;
    inst.truck_speed_kmh = parse_float(v[0], no);
    inst.drone_speed_kmh = parse_float(v[1], no);
    if (inst.truck_speed_kmh <= 0 || inst.drone_speed_kmh <= 0)
      throw ParseError(no, "speeds must be positive");
  }
  {
    auto v = expect_keys(lines, {"ENDURANCE"});
    int no = lines.items[lines.cursor - 1].first;
    inst.endurance_e = (v[0] == "INF") ? kInfinity : parse_float(v[0], no);
  }
  {
    auto v = expect_keys(lines, {"SL", "SR"});
    int no = lines.items[lines.cursor - 1].first;
    inst.service_launch_sl = parse_float(v[0], no);
    inst.service_return_sr = parse_float(v[1], no);
  }
  {
    if (lines.done()) throw ParseError(header_line, "missing NODES section");
    auto [no, content] = lines.take();
    if (content != "NODES") throw ParseError(no, "expected NODES, got '" + content + "'");
    inst.coords.resize(inst.n);
    inst.eligible.assign(inst.n, false);
    for (int i = 0; i < inst.n; ++i) {
      if (lines.done()) throw ParseError(no, "unexpected end of file inside NODES");
      auto [lno, lcontent] = lines.take();
      auto toks = tokens_of(lcontent);
      if (toks.size() != 4) throw ParseError(lno, "node line needs 'id x y eligible'");
      long id = parse_int(toks[0], lno);
      if (id != i) throw ParseError(lno, "node ids must be 0..n-1 in order, got " + toks[0]);
      inst.coords[i] = {parse_float(toks[1], lno), parse_float(toks[2], lno)};
      long elig = parse_int(toks[3], lno);
      if (elig != 0 && elig != 1) throw ParseError(lno, "eligibility flag must be 0 or 1");
      inst.eligible[i] = elig == 1;
    }
  }

  bool have_truck = false, have_drone = false;
  while (!lines.done() && lines.peek().second != "EOF") {
    auto [no, content] = lines.take();
    if (content == "TRUCK_MATRIX" && !have_truck) {
      inst.truck_time = parse_matrix(lines, inst.n, "TRUCK_MATRIX");
      have_truck = true;
    } else if (content == "DRONE_MATRIX" && !have_drone) {
      inst.drone_time = parse_matrix(lines, inst.n, "DRONE_MATRIX");
      have_drone = true;
    } else {
      throw ParseError(no, "unexpected line '" + content + "'");
    }
  }
  if (lines.done()) throw ParseError(lines.items.back().first, "missing EOF terminator");
  lines.take();  // EOF
  if (!lines.done()) throw ParseError(lines.peek().first, "content after EOF");

  if (!have_truck || !have_drone) {
    // Per-variant default metrics for files that omit the matrices.
    Metric truck_metric = inst.variant == Variant::FSTSP ? Metric::Manhattan : Metric::Euclidean;
    auto [tm, dm] = build_matrices(inst.coords, inst.truck_speed_kmh, inst.drone_speed_kmh,
                                   truck_metric, Metric::Euclidean);
    if (!have_truck) inst.truck_time = std::move(tm);
    if (!have_drone) inst.drone_time = std::move(dm);
  }

  auto violations = validate(inst);
  if (!violations.empty()) throw ParseError(header_line, violations.front());
  return inst;
}

std::string serialize(const Instance& inst) {
  std::ostringstream out;
  out << "NAME " << inst.name << "\n";
  out << "VARIANT " << (inst.variant == Variant::FSTSP ? "FSTSP" : "TSPD") << "\n";
  out << "N " << inst.n << "\n";
  out << "TRUCK_SPEED " << format_exact(inst.truck_speed_kmh) << " DRONE_SPEED "
      << format_exact(inst.drone_speed_kmh) << "\n";
  out << "ENDURANCE " << (inst.endurance_e == kInfinity ? "INF" : format_exact(inst.endurance_e))
      << "\n";
  out << "SL " << format_exact(inst.service_launch_sl) << " SR "
      << format_exact(inst.service_return_sr) << "\n";
  out << "NODES\n";
  for (int i = 0; i < inst.n; ++i)
    out << i << " " << format_exact(inst.coords[i][0]) << " " << format_exact(inst.coords[i][1])
        << " " << (inst.eligible[i] ? 1 : 0) << "\n";
  auto dump = [&](const TimeMatrix& m, const char* label) {
    out << label << "\n";
    for (int i = 0; i < inst.n; ++i) {
      for (int j = 0; j < inst.n; ++j) {
        if (j) out << " ";
        out << format_exact(m(i, j));
      }
      out << "\n";
    }
  };
  dump(inst.truck_time, "TRUCK_MATRIX");
  dump(inst.drone_time, "DRONE_MATRIX");
  out << "EOF\n";
  return out.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << serialize(inst);
}

}  // namespace fstsp
