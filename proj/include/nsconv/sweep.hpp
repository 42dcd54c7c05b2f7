#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsconv/analysis.hpp"
#include "nsconv/picard.hpp"

namespace nsconv {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  std::filesystem::path path;
  IoError(const std::filesystem::path& p, const std::string& what)
      : std::runtime_error(what + ": " + p.string()), path(p) {}
};

/// Sweep protocol parameters; defaults reproduce the reference protocol
/// (modes 1..5, F = 10^k/n for k = 0..3, six viscosities, dots placed on the
/// nu = 0.01 border curve).
struct SweepConfig {
  double half_width = 8.0;
  int resolution = 256;
  double t_final = 1.0;
  int steps = 200;
  std::vector<int> modes = {1, 2, 3, 4, 5};
  std::vector<int> exponents = {0, 1, 2, 3};
  std::vector<double> viscosities = {0.01, 0.1, 0.3, 0.75, 1.0, 1.5};
  double margin = 1.0;
  std::vector<double> profile_radii = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  int profile_angles = 17;
  int history_stride = 5;
  int workers = 0;  // 0 = hardware concurrency
  std::string output_dir;

  void validate();  // sorts the sample lists, checks ranges, throws ConfigError
  std::string canonical() const;
};

SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::filesystem::path& file);

struct JobSpec {
  int mode = 0;
  int exponent = 0;
  double amplitude = 0.0;
  double width = 0.0;
  double viscosity = 0.0;
  bool wants_profile = false;
};

/// Deterministic job list: mode-major, then exponent, then viscosity.  One
/// job per mode (largest exponent, smallest viscosity) carries the profile
/// extraction.
std::vector<JobSpec> enumerate_jobs(const SweepConfig& cfg);

struct ProfileTable {
  int mode = 0;
  double amplitude = 0.0;
  double width = 0.0;
  double viscosity = 0.0;
  std::vector<ProfileSample> samples;
};

struct BorderCurve {
  double viscosity = 0.0;
  std::vector<BorderPoint> points;
};

struct SweepReport {
  SweepConfig config;
  std::string version;
  std::string config_hash;
  std::string timestamp;  // wall clock; never serialized, outputs stay reproducible
  std::vector<SweepRecord> records;
  std::vector<ProfileTable> profiles;
  std::vector<BorderCurve> borders;
};

std::vector<BorderCurve> emit_border_curves(const std::vector<double>& viscosities,
                                            double f_min = 0.2, double f_max = 1000.0,
                                            int samples = 50);

/// Runs every job on a bounded worker pool; per-job failures mark the record
/// degenerate and never abort the sweep.
SweepReport run_sweep(const SweepConfig& cfg);

/// Writes records.csv, border_<nu>.csv, profiles_n<mode>.csv and manifest.txt
/// into dir; returns the paths written.
std::vector<std::filesystem::path> emit_reports(const SweepReport& report,
                                                const std::filesystem::path& dir);

// serialization helpers (shortest round-trip number formatting)
std::string format_double(double v);
double parse_double(std::string_view s);
std::string record_csv_header();
std::string record_csv_row(const SweepRecord& r);
SweepRecord parse_record_row(std::string_view line);
std::vector<SweepRecord> read_records_csv(std::istream& in);
std::string config_hash_hex(const std::string& canonical);
std::vector<double> profile_angle_list(int count);  // uniform on [0, pi]

}  // namespace nsconv
