#include "funksphere/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "funksphere/errors.hpp"
#include "funksphere/grid_file.hpp"
#include "funksphere/harmonics.hpp"
#include "funksphere/transforms.hpp"
#include "funksphere/verification.hpp"

namespace funksphere {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, std::string_view spec) {
  token = trim(token);
  if (const auto eq = token.find('='); eq != std::string_view::npos) token = trim(token.substr(eq + 1));
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw DomainError("bad number '" + std::string(token) + "' in function " + std::string(spec));
  return v;
}

int parse_integer(std::string_view token, std::string_view spec) {
  const double v = parse_number(token, spec);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw DomainError("expected an integer in function " + std::string(spec));
  return static_cast<int>(v);
}

void expect_args(std::size_t got, std::size_t want, std::string_view spec) {
  if (got != want)
    throw DomainError("function " + std::string(spec) + " takes " + std::to_string(want) + " arguments");
}

std::string format_fraction(double odd) {
  std::ostringstream s;
  s << std::setprecision(6) << odd;
  return s.str();
}

struct Command {
  CLI::App* sub = nullptr;
  virtual ~Command() = default;
  virtual int run(std::ostream& out, std::ostream& err) = 0;
};

struct SampleCommand : Command {
  std::string function, path, description;
  int d = 3, L = 32, M = 64;

  explicit SampleCommand(CLI::App& app) {
    sub = app.add_subcommand("sample", "Sample a built-in test function on a grid");
    sub->add_option("--function", function, "const, coord_d, coord_d_sq, gauss_bump(...), harmonic(n,k), "
                                            "symmetric_z(z,seed,N)")->required();
    sub->add_option("--d", d, "Ambient dimension (3 or 4)")->capture_default_str();
    sub->add_option("--L", L, "Latitude count")->capture_default_str();
    sub->add_option("--M", M, "Longitude count")->capture_default_str();
    sub->add_option("--out", path, "Output grid function file")->required();
    sub->add_option("--description", description, "Header description (defaults to the function spec)");
  }

  int run(std::ostream& out, std::ostream&) override {
    const auto grid = sphere_grid(d, L, M);
    const BuiltinFunction fn = parse_function(function, d);
    const GridFunction values = sample(fn.f, grid);
    write_grid_file(path, header_for(*grid, fn.z, description.empty() ? function : description), values.values());
    out << "wrote " << values.size() << " values to " << path << '\n';
    return exit_code::ok;
  }
};

struct ForwardCommand : Command {
  std::string in, path, method = "direct";
  double z = 0.0;
  int m = 256, N = -1;
  bool check = false;

  explicit ForwardCommand(CLI::App& app) {
    sub = app.add_subcommand("forward", "Apply the spherical section transform U_z");
    sub->add_option("--z", z, "Shift parameter, 0 <= z < 1")->required();
    sub->add_option("--m", m, "Subsphere quadrature resolution")->capture_default_str();
    sub->add_option("--in", in, "Input grid function file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", path, "Output grid function file")->required();
    sub->add_option("--method", method, "direct or factored")
        ->check(CLI::IsMember({"direct", "factored"}))
        ->capture_default_str();
    sub->add_option("--N", N, "Bandlimit used to interpolate the input (default: grid maximum)");
    sub->add_flag("--check", check, "Also run the other method and report the largest difference");
  }

  int run(std::ostream& out, std::ostream&) override {
    const GridFunction f = to_grid_function(read_grid_file(in));
    const int bandlimit = N < 0 ? f.sphere().max_bandlimit() : N;
    const SphereFunction smooth = interpolant(analyze(f, bandlimit));
    OperatorConfig cfg;
    cfg.z = z;
    cfg.m = m;
    cfg.bandlimit = bandlimit;
    const bool direct = method == "direct";
    auto apply = [&](bool use_direct) {
      return use_direct ? spherical_transform_direct(smooth, f.grid(), cfg)
                        : spherical_transform_factored(smooth, f.grid(), cfg);
    };
    const GridFunction image = apply(direct);
    std::ostringstream desc;
    desc << "U_z at z = " << z << ", method " << method << ", m = " << m;
    if (check) {
      const double residual = max_abs_difference(image, apply(!direct));
      desc << ", check residual " << residual;
      out << "method=" << method << " check_residual=" << std::setprecision(6) << residual << '\n';
    }
    write_grid_file(path, header_for(f.sphere(), z, desc.str()), image.values());
    out << "wrote " << image.size() << " values to " << path << '\n';
    return exit_code::ok;
  }
};

struct InverseCommand : Command {
  std::string in, path;
  std::optional<double> z;
  int N = -1;

  explicit InverseCommand(CLI::App& app) {
    sub = app.add_subcommand("inverse", "Invert U_z on bandlimited, even data");
    sub->add_option("--z", z, "Shift parameter (default: the z recorded in the input header)");
    sub->add_option("--N", N, "Spectral bandlimit (default: grid maximum)");
    sub->add_option("--in", in, "Input grid function file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", path, "Output grid function file")->required();
  }

  int run(std::ostream& out, std::ostream& err) override {
    const GridFunctionFile file = read_grid_file(in);
    const std::optional<double> shift = z ? z : file.header.z;
    if (!shift) {
      err << "error: no --z given and the input header records none\n";
      return exit_code::usage;
    }
    const GridFunction g = to_grid_function(file);
    OperatorConfig cfg;
    cfg.z = *shift;
    cfg.spectral_bandlimit = N;
    cfg.bandlimit = cfg.resolved_spectral_bandlimit(g.sphere());
    cfg.m = std::max(cfg.m, 2 * cfg.bandlimit + 2);
    try {
      const GridFunction f = inverse_spherical_transform(g, cfg);
      std::ostringstream desc;
      desc << "inverse U_z at z = " << *shift;
      write_grid_file(path, header_for(g.sphere(), *shift, desc.str()), f.values());
      out << "wrote " << f.size() << " values to " << path << '\n';
    } catch (const NotInRangeError& e) {
      err << "error: " << e.what() << '\n' << "odd energy fraction: " << format_fraction(e.odd_fraction()) << '\n';
      return exit_code::not_in_range;
    }
    return exit_code::ok;
  }
};

struct SpectrumCommand : Command {
  std::string in;
  int N = -1;
  double s = 0.0;

  explicit SpectrumCommand(CLI::App& app) {
    sub = app.add_subcommand("spectrum", "Print the degree-wise harmonic energy as CSV");
    sub->add_option("--in", in, "Input grid function file")->required()->check(CLI::ExistingFile);
    sub->add_option("--N", N, "Highest degree (default: grid maximum)");
    sub->add_option("--s", s, "Sobolev index of the weighted column")->capture_default_str();
  }

  int run(std::ostream& out, std::ostream&) override {
    const GridFunction f = to_grid_function(read_grid_file(in));
    const SobolevIndex index(s);
    const HarmonicCoeffs c = analyze(f, N < 0 ? f.sphere().max_bandlimit() : N);
    const double shift = 0.5 * (c.dim() - 2);
    out << "n,energy,sobolev_weighted_energy\n" << std::setprecision(12);
    for (int n = 0; n <= c.bandlimit(); ++n) {
      const double e = c.degree_energy(n);
      out << n << ',' << e << ',' << std::pow(n + shift, 2.0 * index.value()) * e << '\n';
    }
    return exit_code::ok;
  }
};

struct VerifyCommand : Command {
  VerifyOptions options;
  std::string suite = "all";
  double tol = 0.0;
  CLI::Option* tol_option = nullptr;

  explicit VerifyCommand(CLI::App& app) {
    sub = app.add_subcommand("verify", "Run the built-in identity checks and print a CSV report");
    sub->add_option("--z", options.z_values, "Shift parameters")->delimiter(',')->capture_default_str();
    sub->add_option("--d", options.dims, "Dimensions")->delimiter(',')->capture_default_str();
    sub->add_option("--seed", options.seed, "Random seed")->capture_default_str();
    tol_option = sub->add_option("--tol", tol, "Tolerance applied to every check instead of the defaults");
    sub->add_option("--suite", suite, "geometry, transforms or all")
        ->check(CLI::IsMember({"geometry", "transforms", "all"}))
        ->capture_default_str();
  }

  int run(std::ostream& out, std::ostream& err) override {
    if (tol_option->count() > 0) options.tolerance = tol;
    options.suite = suite == "geometry" ? VerifySuite::geometry
                    : suite == "transforms" ? VerifySuite::transforms
                                            : VerifySuite::all;
    const auto results = run_verification(options);
    write_report(out, results);
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed(); });
    if (failed > 0) {
      err << failed << " of " << results.size() << " checks failed\n";
      return exit_code::verification_failed;
    }
    return exit_code::ok;
  }
};

}  // namespace

BuiltinFunction parse_function(std::string_view spec, int d) {
  const std::string_view s = trim(spec);
  const auto open = s.find('(');
  const std::string_view name = trim(s.substr(0, open));
  std::vector<std::string_view> args;
  if (open != std::string_view::npos) {
    if (s.back() != ')') throw DomainError("unbalanced parentheses in function " + std::string(spec));
    std::string_view inner = s.substr(open + 1, s.size() - open - 2);
    while (!trim(inner).empty()) {
      const auto comma = inner.find(',');
      args.push_back(inner.substr(0, comma));
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
  }

  if (name == "const") {
    if (args.size() > 1) throw DomainError("const takes at most one argument");
    const double c = args.empty() ? 1.0 : parse_number(args[0], spec);
    return {[c](const UnitVector&) { return c; }, std::nullopt};
  }
  if (name == "coord_d") {
    expect_args(args.size(), 0, spec);
    return {[](const UnitVector& p) { return p.last(); }, std::nullopt};
  }
  if (name == "coord_d_sq") {
    expect_args(args.size(), 0, spec);
    return {[](const UnitVector& p) { return p.last() * p.last(); }, std::nullopt};
  }
  if (name == "gauss_bump") {
    if (args.size() != 1 && args.size() != static_cast<std::size_t>(d) + 1)
      throw DomainError("gauss_bump takes (width) or (c_1, ..., c_d, width)");
    std::vector<double> center(static_cast<std::size_t>(d), 0.0);
    center.back() = 1.0;
    if (args.size() > 1)
      for (int i = 0; i < d; ++i) center[static_cast<std::size_t>(i)] = parse_number(args[static_cast<std::size_t>(i)], spec);
    double n2 = 0.0;
    for (double c : center) n2 += c * c;
    if (n2 == 0.0) throw DomainError("gauss_bump center must be nonzero");
    for (double& c : center) c /= std::sqrt(n2);
    const double width = parse_number(args.back(), spec);
    if (!(width > 0.0)) throw DomainError("gauss_bump width must be positive");
    const UnitVector c(center);
    return {[c, width](const UnitVector& p) { return std::exp((p.dot(c) - 1.0) / (width * width)); }, std::nullopt};
  }
  if (name == "harmonic") {
    expect_args(args.size(), 2, spec);
    const int n = parse_integer(args[0], spec), k = parse_integer(args[1], spec);
    if (n < 0 || k < 0 || static_cast<std::uint64_t>(k) >= dim_harmonic(n, d))
      throw DomainError("harmonic(n, k) needs n >= 0 and 0 <= k < dim of the degree-n space");
    HarmonicCoeffs c(d, n);
    c.at(n, static_cast<std::size_t>(k)) = 1.0;
    return {interpolant(std::move(c)), std::nullopt};
  }
  if (name == "symmetric_z") {
    expect_args(args.size(), 3, spec);
    const double z = parse_number(args[0], spec);
    const int seed = parse_integer(args[1], spec), N = parse_integer(args[2], spec);
    if (seed < 0 || N < 0) throw DomainError("symmetric_z needs seed >= 0 and N >= 0");
    const ShiftParameter shift(z);
    return {symmetrize_z(interpolant(random_harmonic_coeffs(d, N, static_cast<std::uint64_t>(seed))), shift), z};
  }
  throw DomainError("unknown function '" + std::string(name) + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Spherical section transforms on S^2 and S^3", "funksphere");
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;
  commands.push_back(std::make_unique<SampleCommand>(app));
  commands.push_back(std::make_unique<ForwardCommand>(app));
  commands.push_back(std::make_unique<InverseCommand>(app));
  commands.push_back(std::make_unique<SpectrumCommand>(app));
  commands.push_back(std::make_unique<VerifyCommand>(app));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    for (const auto& command : commands)
      if (command->sub->parsed()) return command->run(out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  return exit_code::usage;
}

}  // namespace funksphere
