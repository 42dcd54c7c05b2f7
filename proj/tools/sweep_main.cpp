#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include "nsconv/oracles.hpp"
#include "nsconv/plot.hpp"
#include "nsconv/sweep.hpp"
#include "nsconv/version.hpp"

namespace fs = std::filesystem;
using namespace nsconv;

namespace {

// exit codes: 0 ok, 1 config error, 2 I/O error, 3 degenerate or failed point
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kIoError = 2;
constexpr int kFailedPoint = 3;

void probe_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create output directory");
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError(dir, "output directory not writable");
  }
  fs::remove(probe, ec);
}

int cmd_run(const std::string& config_file, const std::string& out_dir, int workers) {
  SweepConfig cfg;
  if (!config_file.empty()) cfg = load_config(config_file);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (workers >= 0) cfg.workers = workers;
  if (cfg.output_dir.empty())
    throw ConfigError("no output directory (pass --out or set output_dir)");
  cfg.validate();

  probe_writable(cfg.output_dir);
  SweepReport report = run_sweep(cfg);
  const auto files = emit_reports(report, cfg.output_dir);

  std::size_t bad = 0;
  for (const SweepRecord& r : report.records) bad += r.degenerate ? 1 : 0;
  std::cout << "sweep: " << report.records.size() << " records, " << report.profiles.size()
            << " profile tables, " << report.borders.size() << " border curves, " << bad
            << " degenerate\n";
  std::cout << "wrote " << files.size() << " files to " << cfg.output_dir
            << " (config " << report.config_hash << ")\n";
  return bad == 0 ? kOk : kFailedPoint;
}

int cmd_borders(const std::string& out_dir, std::vector<double> nus, double fmin,
                double fmax, int samples) {
  if (nus.empty()) nus = reference_sample_set().viscosities;
  probe_writable(out_dir);
  const auto curves = emit_border_curves(nus, fmin, fmax, samples);
  for (const BorderCurve& curve : curves) {
    const fs::path p = fs::path(out_dir) / ("border_" + format_double(curve.viscosity) + ".csv");
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError(p, "cannot open for writing");
    out << "F,mu_border\n";
    for (const BorderPoint& bp : curve.points)
      out << format_double(bp.amplitude) << ',' << format_double(bp.mu_border) << "\n";
    out.flush();
    if (!out) throw IoError(p, "write failed");
    std::cout << p.string() << "\n";
  }
  return kOk;
}

int cmd_point(int n, double F, double mu, double nu, double L, int N, double t_final,
              int steps, int stride) {
  SweepRecord rec;
  rec.mode = n;
  rec.amplitude = F;
  rec.width = mu;
  rec.viscosity = nu;
  const double k = std::log10(F * n);
  rec.exponent = std::abs(k - std::round(k)) < 1e-9 ? std::round(k) : k;
  rec.mu_border = border_mu(F, nu);
  rec.predicted_convergent = convergence_predicate(F, mu, nu);

  ForceParams p(n, F, mu, nu);
  IterationResult res = run_iteration(p, GridSpec(L, N), TimeGrid(t_final, steps), stride);
  rec.max_u1 = res.max_u1;
  rec.max_u2star = res.max_u2star;
  rec.ratio = res.ratio;
  rec.degenerate = res.degenerate;

  std::cout << record_csv_header() << "\n" << record_csv_row(rec) << "\n";
  return rec.degenerate ? kFailedPoint : kOk;
}

std::vector<SweepRecord> load_records(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError(file, "cannot open");
  return read_records_csv(in);
}

int cmd_plot(const std::string& in_dir) {
  const fs::path dir(in_dir);
  if (!fs::is_directory(dir)) throw IoError(dir, "not a directory");

  // border curves + the dot set on top of them
  PlotSpec borders;
  borders.title = "Convergence border mu = (F/nu)^(1/4)";
  borders.x_label = "F";
  borders.y_label = "mu";
  borders.log_x = true;
  std::vector<fs::path> border_files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("border_", 0) == 0 && e.path().extension() == ".csv")
      border_files.push_back(e.path());
  }
  std::sort(border_files.begin(), border_files.end(), [](const fs::path& a, const fs::path& b) {
    auto nu_of = [](const fs::path& p) {
      const std::string s = p.stem().string();
      return parse_double(std::string_view(s).substr(7));
    };
    return nu_of(a) < nu_of(b);
  });
  for (const fs::path& p : border_files) {
    std::ifstream in(p);
    if (!in) throw IoError(p, "cannot open");
    std::string line;
    std::getline(in, line);  // header
    PlotSeries s;
    s.label = p.stem().string().substr(7);
    s.label = "nu = " + s.label;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto comma = line.find(',');
      s.points.emplace_back(parse_double(std::string_view(line).substr(0, comma)),
                            parse_double(std::string_view(line).substr(comma + 1)));
    }
    borders.series.push_back(std::move(s));
  }

  std::vector<SweepRecord> records;
  if (fs::exists(dir / "records.csv")) records = load_records(dir / "records.csv");
  if (!records.empty()) {
    double nu_min = records.front().viscosity;
    for (const SweepRecord& r : records) nu_min = std::min(nu_min, r.viscosity);
    PlotSeries dots;
    dots.label = "sweep points";
    dots.dots = true;
    for (const SweepRecord& r : records)
      if (r.viscosity == nu_min) dots.points.emplace_back(r.amplitude, r.width);
    borders.series.push_back(std::move(dots));
  }
  if (!borders.series.empty()) {
    write_svg_chart(dir / "borders.svg", borders);
    std::cout << (dir / "borders.svg").string() << "\n";
  }

  // first/second step maxima against F, one pair of series per mode
  if (!records.empty()) {
    double nu_min = records.front().viscosity;
    for (const SweepRecord& r : records) nu_min = std::min(nu_min, r.viscosity);
    PlotSpec amps;
    amps.title = "Velocity maxima vs F (nu = " + format_double(nu_min) + ")";
    amps.x_label = "F";
    amps.y_label = "max speed";
    amps.log_x = true;
    amps.log_y = true;
    std::map<int, PlotSeries> u1, u2;
    for (const SweepRecord& r : records) {
      if (r.viscosity != nu_min || r.degenerate) continue;
      auto& a = u1[r.mode];
      auto& b = u2[r.mode];
      a.label = "n=" + std::to_string(r.mode) + " u1";
      b.label = "n=" + std::to_string(r.mode) + " u2*";
      a.points.emplace_back(r.amplitude, r.max_u1);
      b.points.emplace_back(r.amplitude, r.max_u2star);
    }
    for (auto& [mode, s] : u1) {
      std::sort(s.points.begin(), s.points.end());
      amps.series.push_back(std::move(s));
    }
    for (auto& [mode, s] : u2) {
      std::sort(s.points.begin(), s.points.end());
      s.dots = true;
      amps.series.push_back(std::move(s));
    }
    write_svg_chart(dir / "amplitudes.svg", amps);
    std::cout << (dir / "amplitudes.svg").string() << "\n";
  }

  // angular profiles per mode
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("profiles_n", 0) != 0 || e.path().extension() != ".csv") continue;
    std::ifstream in(e.path());
    if (!in) throw IoError(e.path(), "cannot open");
    std::string line;
    std::getline(in, line);
    std::map<std::string, PlotSeries> s1, s2;
    std::string title_params;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> f;
      std::size_t start = 0;
      while (true) {
        const auto pos = line.find(',', start);
        f.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
      if (f.size() != 8) continue;
      if (title_params.empty())
        title_params = "n=" + f[0] + ", F=" + f[1] + ", mu=" + f[2] + ", nu=" + f[3];
      const std::string r = f[4];
      const double phi = parse_double(f[5]);
      auto& a = s1["r=" + r + " u1"];
      auto& b = s2["r=" + r + " u2*"];
      a.label = "r=" + r + " u1";
      b.label = "r=" + r + " u2*";
      a.points.emplace_back(phi, parse_double(f[6]));
      b.points.emplace_back(phi, parse_double(f[7]));
    }
    PlotSpec prof;
    prof.title = "Amplitude profiles (" + title_params + ")";
    prof.x_label = "phi";
    prof.y_label = "|u|";
    for (auto& [key, s] : s1) prof.series.push_back(std::move(s));
    for (auto& [key, s] : s2) {
      s.dots = true;
      prof.series.push_back(std::move(s));
    }
    const fs::path out = e.path().parent_path() / (e.path().stem().string() + ".svg");
    write_svg_chart(out, prof);
    std::cout << out.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-step iteration sweep for the forced 2-D incompressible flow problem"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a sweep and write CSV reports");
  std::string run_config, run_out;
  int run_workers = -1;
  run->add_option("--config", run_config, "key=value config file");
  run->add_option("--out", run_out, "output directory (overrides config)");
  run->add_option("--workers", run_workers, "worker threads (0 = auto)");

  auto* borders = app.add_subcommand("borders", "write border-curve tables only");
  std::string borders_out;
  std::vector<double> borders_nu;
  double fmin = 0.2, fmax = 1000.0;
  int samples = 50;
  borders->add_option("--out", borders_out, "output directory")->required();
  borders->add_option("--nu", borders_nu, "viscosities (default: the six reference values)");
  borders->add_option("--fmin", fmin, "lower F bound");
  borders->add_option("--fmax", fmax, "upper F bound");
  borders->add_option("--samples", samples, "number of log-spaced F samples");

  auto* point = app.add_subcommand("point", "run one parameter point, print its CSV row");
  int pn = 1, pN = 256, psteps = 200, pstride = 5;
  double pF = 1.0, pmu = 1.0, pnu = 0.01, pL = 8.0, pt = 1.0;
  point->add_option("--n", pn, "angular mode")->required();
  point->add_option("--F", pF, "force amplitude")->required();
  point->add_option("--mu", pmu, "force width parameter")->required();
  point->add_option("--nu", pnu, "viscosity")->required();
  point->add_option("--L", pL, "box half width");
  point->add_option("--N", pN, "grid resolution");
  point->add_option("--t-final", pt, "final time");
  point->add_option("--steps", psteps, "time steps");
  point->add_option("--stride", pstride, "history stride");

  auto* plot = app.add_subcommand("plot", "render SVG charts from CSVs in a directory");
  std::string plot_in;
  plot->add_option("--in", plot_in, "directory with sweep CSVs")->required();

  auto* verify = app.add_subcommand("verify", "run the validation oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(run_config, run_out, run_workers);
    if (borders->parsed()) return cmd_borders(borders_out, borders_nu, fmin, fmax, samples);
    if (point->parsed()) return cmd_point(pn, pF, pmu, pnu, pL, pN, pt, psteps, pstride);
    if (plot->parsed()) return cmd_plot(plot_in);
    if (verify->parsed()) return run_all_oracles(std::cout) ? kOk : kFailedPoint;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kConfigError;
}
