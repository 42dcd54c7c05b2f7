#include "nsconv/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "nsconv/version.hpp"

namespace nsconv {

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

long parse_long(const std::string& s, const std::string& key) {
  const std::string t = trim(s);
  long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    throw ConfigError("invalid integer for '" + key + "': " + t);
  return v;
}

double parse_double_or_throw(const std::string& s, const std::string& key) {
  const std::string t = trim(s);
  try {
    return parse_double(t);
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': " + t);
  }
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& value, const std::string& key, F item) {
  std::vector<T> out;
  if (trim(value).empty()) return out;
  for (const std::string& piece : split(value, ',')) out.push_back(item(piece, key));
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && p == s.data() + s.size()) return v;
  // from_chars on some libraries rejects nan/inf spellings; strtod takes them
  std::string tmp(s);
  char* end = nullptr;
  v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size() || tmp.empty())
    throw std::invalid_argument("parse_double: invalid number: " + tmp);
  return v;
}

void SweepConfig::validate() {
  GridSpec grid;
  try {
    grid = GridSpec(half_width, resolution);
    TimeGrid(t_final, steps);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  for (int n : modes)
    if (n < 1) throw ConfigError("modes must be >= 1");
  for (double nu : viscosities)
    if (!(nu > 0.0)) throw ConfigError("viscosities must be positive");
  if (!(margin >= 1.0)) throw ConfigError("margin must be >= 1");
  const double r_max = half_width - grid.dx();
  for (double r : profile_radii)
    if (!(r >= 0.0 && r <= r_max))
      throw ConfigError("profile_radii must lie in [0, L - dx]");
  if (profile_angles < 1) throw ConfigError("profile_angles must be >= 1");
  if (history_stride < 1) throw ConfigError("history_stride must be >= 1");
  if (workers < 0) throw ConfigError("workers must be >= 0");

  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(modes);
  sort_unique(exponents);
  sort_unique(viscosities);
  sort_unique(profile_radii);
}

std::string SweepConfig::canonical() const {
  std::string out;
  out += "half_width = " + format_double(half_width) + "\n";
  out += "resolution = " + std::to_string(resolution) + "\n";
  out += "t_final = " + format_double(t_final) + "\n";
  out += "steps = " + std::to_string(steps) + "\n";
  out += "modes = " + join_ints(modes) + "\n";
  out += "exponents = " + join_ints(exponents) + "\n";
  out += "viscosities = " + join_doubles(viscosities) + "\n";
  out += "margin = " + format_double(margin) + "\n";
  out += "profile_radii = " + join_doubles(profile_radii) + "\n";
  out += "profile_angles = " + std::to_string(profile_angles) + "\n";
  out += "history_stride = " + std::to_string(history_stride) + "\n";
  out += "workers = " + std::to_string(workers) + "\n";
  out += "output_dir = " + output_dir + "\n";
  return out;
}

SweepConfig parse_config(std::istream& in) {
  SweepConfig cfg;
  std::vector<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ConfigError("duplicate key '" + key + "'");
    seen.push_back(key);

    auto as_int = [](const std::string& v, const std::string& k) {
      return static_cast<int>(parse_long(v, k));
    };
    auto as_double = [](const std::string& v, const std::string& k) {
      return parse_double_or_throw(v, k);
    };

    if (key == "half_width") cfg.half_width = as_double(value, key);
    else if (key == "resolution") cfg.resolution = as_int(value, key);
    else if (key == "t_final") cfg.t_final = as_double(value, key);
    else if (key == "steps") cfg.steps = as_int(value, key);
    else if (key == "modes") cfg.modes = parse_list<int>(value, key, as_int);
    else if (key == "exponents") cfg.exponents = parse_list<int>(value, key, as_int);
    else if (key == "viscosities") cfg.viscosities = parse_list<double>(value, key, as_double);
    else if (key == "margin") cfg.margin = as_double(value, key);
    else if (key == "profile_radii") cfg.profile_radii = parse_list<double>(value, key, as_double);
    else if (key == "profile_angles") cfg.profile_angles = as_int(value, key);
    else if (key == "history_stride") cfg.history_stride = as_int(value, key);
    else if (key == "workers") cfg.workers = as_int(value, key);
    else if (key == "output_dir") cfg.output_dir = value;
    else throw ConfigError("unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError(file, "cannot open config");
  return parse_config(in);
}

std::vector<JobSpec> enumerate_jobs(const SweepConfig& cfg) {
  std::vector<JobSpec> jobs;
  for (int n : cfg.modes) {
    for (int k : cfg.exponents) {
      const double F = std::pow(10.0, k) / n;
      const double mu = dot_set_mu(F, cfg.margin);
      for (double nu : cfg.viscosities) {
        JobSpec j;
        j.mode = n;
        j.exponent = k;
        j.amplitude = F;
        j.width = mu;
        j.viscosity = nu;
        j.wants_profile = (!cfg.exponents.empty() && k == cfg.exponents.back() &&
                           nu == cfg.viscosities.front());
        jobs.push_back(j);
      }
    }
  }
  return jobs;
}

std::vector<double> profile_angle_list(int count) {
  std::vector<double> angles(count);
  if (count == 1) {
    angles[0] = 0.0;
    return angles;
  }
  for (int i = 0; i < count; ++i) angles[i] = M_PI * i / (count - 1);
  return angles;
}

std::vector<BorderCurve> emit_border_curves(const std::vector<double>& viscosities,
                                            double f_min, double f_max, int samples) {
  if (!(f_min > 0.0) || !(f_max > f_min))
    throw std::invalid_argument("emit_border_curves: need 0 < f_min < f_max");
  if (samples < 2) throw std::invalid_argument("emit_border_curves: samples must be >= 2");
  std::vector<double> fgrid(samples);
  const double lmin = std::log(f_min), lmax = std::log(f_max);
  for (int i = 0; i < samples; ++i)
    fgrid[i] = std::exp(lmin + (lmax - lmin) * i / (samples - 1));
  fgrid.front() = f_min;
  fgrid.back() = f_max;

  std::vector<BorderCurve> curves;
  for (double nu : viscosities) {
    BorderCurve c;
    c.viscosity = nu;
    for (double F : fgrid) c.points.push_back(make_border_point(F, nu));
    curves.push_back(std::move(c));
  }
  return curves;
}

SweepReport run_sweep(const SweepConfig& cfg_in) {
  SweepConfig cfg = cfg_in;
  cfg.validate();

  SweepReport report;
  report.config = cfg;
  report.version = kVersion;
  report.config_hash = config_hash_hex(cfg.canonical());
  {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    report.timestamp = buf;
  }

  const std::vector<JobSpec> jobs = enumerate_jobs(cfg);
  report.records.assign(jobs.size(), SweepRecord{});
  std::vector<ProfileTable> profiles(jobs.size());
  std::vector<char> has_profile(jobs.size(), 0);

  const GridSpec grid(cfg.half_width, cfg.resolution);
  const TimeGrid tg(cfg.t_final, cfg.steps);
  const std::vector<double> angles = profile_angle_list(cfg.profile_angles);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const JobSpec& job = jobs[i];
      SweepRecord rec;
      rec.mode = job.mode;
      rec.exponent = job.exponent;
      rec.amplitude = job.amplitude;
      rec.width = job.width;
      rec.viscosity = job.viscosity;
      rec.mu_border = border_mu(job.amplitude, job.viscosity);
      rec.predicted_convergent =
          convergence_predicate(job.amplitude, job.width, job.viscosity);
      try {
        ForceParams p(job.mode, job.amplitude, job.width, job.viscosity);
        IterationResult res = run_iteration(p, grid, tg, cfg.history_stride);
        rec.max_u1 = res.max_u1;
        rec.max_u2star = res.max_u2star;
        rec.ratio = res.ratio;
        rec.degenerate = res.degenerate;
        if (job.wants_profile && !res.degenerate) {
          ProfileTable table;
          table.mode = job.mode;
          table.amplitude = job.amplitude;
          table.width = job.width;
          table.viscosity = job.viscosity;
          table.samples = extract_profiles(res, cfg.profile_radii, angles);
          profiles[i] = std::move(table);
          has_profile[i] = 1;
        }
      } catch (const std::exception&) {
        rec.max_u1 = nan;
        rec.max_u2star = nan;
        rec.ratio.reset();
        rec.degenerate = true;
      }
      report.records[i] = std::move(rec);
    }
  };

  unsigned pool = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                  : std::max(1u, std::thread::hardware_concurrency());
  pool = std::min<unsigned>(pool, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < pool; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (has_profile[i]) report.profiles.push_back(std::move(profiles[i]));

  report.borders = emit_border_curves(cfg.viscosities);
  return report;
}

std::string record_csv_header() {
  return "n,k,F,mu,nu,mu_border,predicted_convergent,max_u1,max_u2star,ratio,degenerate";
}

std::string record_csv_row(const SweepRecord& r) {
  std::string out;
  out += std::to_string(r.mode);
  out += ',';
  out += format_double(r.exponent);
  out += ',';
  out += format_double(r.amplitude);
  out += ',';
  out += format_double(r.width);
  out += ',';
  out += format_double(r.viscosity);
  out += ',';
  out += format_double(r.mu_border);
  out += ',';
  out += r.predicted_convergent ? '1' : '0';
  out += ',';
  out += format_double(r.max_u1);
  out += ',';
  out += format_double(r.max_u2star);
  out += ',';
  out += r.ratio ? format_double(*r.ratio) : "nan";
  out += ',';
  out += r.degenerate ? '1' : '0';
  return out;
}

SweepRecord parse_record_row(std::string_view line) {
  const std::vector<std::string> f = split(line, ',');
  if (f.size() != 11)
    throw std::invalid_argument("record row must have 11 fields, got " +
                                std::to_string(f.size()));
  SweepRecord r;
  r.mode = static_cast<int>(parse_long(f[0], "n"));
  r.exponent = parse_double(f[1]);
  r.amplitude = parse_double(f[2]);
  r.width = parse_double(f[3]);
  r.viscosity = parse_double(f[4]);
  r.mu_border = parse_double(f[5]);
  r.predicted_convergent = parse_long(f[6], "predicted_convergent") != 0;
  r.max_u1 = parse_double(f[7]);
  r.max_u2star = parse_double(f[8]);
  const double ratio = parse_double(f[9]);
  if (std::isnan(ratio)) r.ratio.reset();
  else r.ratio = ratio;
  r.degenerate = parse_long(f[10], "degenerate") != 0;
  return r;
}

std::vector<SweepRecord> read_records_csv(std::istream& in) {
  std::vector<SweepRecord> out;
  std::string line;
  if (!std::getline(in, line)) return out;
  if (trim(line) != record_csv_header())
    throw std::invalid_argument("unexpected records.csv header: " + line);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    out.push_back(parse_record_row(trim(line)));
  }
  return out;
}

std::string config_hash_hex(const std::string& canonical) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::filesystem::path> emit_reports(const SweepReport& report,
                                                const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create output directory");

  std::vector<fs::path> written;
  auto open = [&](const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError(p, "cannot open for writing");
    return out;
  };
  auto close_checked = [&](std::ofstream& out, const fs::path& p) {
    out.flush();
    if (!out) throw IoError(p, "write failed");
    written.push_back(p);
  };

  {
    const fs::path p = dir / "records.csv";
    std::ofstream out = open(p);
    out << record_csv_header() << "\n";
    for (const SweepRecord& r : report.records) out << record_csv_row(r) << "\n";
    close_checked(out, p);
  }
  for (const BorderCurve& curve : report.borders) {
    const fs::path p = dir / ("border_" + format_double(curve.viscosity) + ".csv");
    std::ofstream out = open(p);
    out << "F,mu_border\n";
    for (const BorderPoint& bp : curve.points)
      out << format_double(bp.amplitude) << ',' << format_double(bp.mu_border) << "\n";
    close_checked(out, p);
  }
  for (const ProfileTable& table : report.profiles) {
    const fs::path p = dir / ("profiles_n" + std::to_string(table.mode) + ".csv");
    std::ofstream out = open(p);
    out << "n,F,mu,nu,r,phi,amp_u1,amp_u2star\n";
    for (const ProfileSample& s : table.samples) {
      out << table.mode << ',' << format_double(table.amplitude) << ','
          << format_double(table.width) << ',' << format_double(table.viscosity) << ','
          << format_double(s.radius) << ',' << format_double(s.angle) << ','
          << format_double(s.amp1) << ',' << format_double(s.amp2) << "\n";
    }
    close_checked(out, p);
  }
  {
    const fs::path p = dir / "manifest.txt";
    std::ofstream out = open(p);
    out << "sweep manifest\n";
    out << "version = " << report.version << "\n";
    out << "config_hash = " << report.config_hash << "\n";
    out << "\n[config]\n" << report.config.canonical();
    out << "\n[files]\n";
    for (const fs::path& w : written) out << w.filename().string() << "\n";
    close_checked(out, p);
  }
  return written;
}

}  // namespace nsconv
