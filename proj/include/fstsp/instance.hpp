#ifndef FSTSP_INSTANCE_HPP
#define FSTSP_INSTANCE_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fstsp/util.hpp"

namespace fstsp {

enum class Variant { FSTSP, TSPD };

enum class Metric { Manhattan, Euclidean };

// Dense symmetric matrix of travel times in minutes.
class TimeMatrix {
 public:
  TimeMatrix() = default;
  explicit TimeMatrix(int n, double fill = 0.0) : n_(n), t_(static_cast<size_t>(n) * n, fill) {}

  double operator()(int i, int j) const { return t_[static_cast<size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return t_[static_cast<size_t>(i) * n_ + j]; }
  int size() const { return n_; }
  bool operator==(const TimeMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> t_;
};

// One routing problem: node 0 is the depot, customers are 1..n-1.
struct Instance {
  std::string name;
  int n = 0;
  std::vector<std::array<double, 2>> coords;
  std::vector<bool> eligible;  // membership in C', always false for the depot
  TimeMatrix truck_time;       // tau, minutes
  TimeMatrix drone_time;       // tau', minutes
  double endurance_e = kInfinity;
  double service_launch_sl = 0.0;
  double service_return_sr = 0.0;
  double truck_speed_kmh = 0.0;
  double drone_speed_kmh = 0.0;
  Variant variant = Variant::FSTSP;

  int customer_count() const { return n - 1; }
  std::vector<int> eligible_customers() const;
  bool operator==(const Instance&) const = default;
};

enum class Family { Ponza, AgatzUniform, AgatzSingleCenter, AgatzDoubleCenter, TsplibDerived };

struct GeneratorParams {
  Family family = Family::Ponza;
  int n = 0;
  std::uint64_t rng_seed = 0;
  double alpha = 1.0;  // drone/truck speed ratio, Agatz families
  double eligible_lo = 0.85;
  double eligible_hi = 0.90;
  // 0 means "use the family default".
  double truck_speed_kmh = 0.0;
  double drone_speed_kmh = 0.0;
  // TsplibDerived input coordinates (raw units) and km-per-unit scale.
  std::vector<std::array<double, 2>> tsplib_coords;
  double coord_scale = 0.01;
  // Single/double-center shape parameters; the source description leaves
  // them open, so they are explicit and configurable.
  double center_sigma = 50.0;
  double second_center_prob = 0.5;
  double second_center_shift = 200.0;
};

struct ParseError : std::runtime_error {
  ParseError(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  int line;
};

// time[i][j] = metric_distance(i,j) / speed * 60, minutes.
std::pair<TimeMatrix, TimeMatrix> build_matrices(const std::vector<std::array<double, 2>>& coords,
                                                 double truck_speed_kmh, double drone_speed_kmh,
                                                 Metric truck_metric, Metric drone_metric);

Instance generate(const GeneratorParams& params);

// Returns human-readable invariant violations; empty means valid.
std::vector<std::string> validate(const Instance& inst);

Instance parse_instance(const std::string& text);
std::string serialize(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

std::string family_name(Family f);

}  // namespace fstsp

#endif  // FSTSP_INSTANCE_HPP
