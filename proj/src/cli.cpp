#include "pauli_compat/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pauli_compat/compatibility.hpp"
#include "pauli_compat/dilations.hpp"
#include "pauli_compat/json_io.hpp"
#include "pauli_compat/verify.hpp"

namespace pauli_compat {

SharpestDirection sharpest_direction(const PauliChannel& ch) {
  Vec3 pp = p_plus_minus(ch).p_plus;
  int axis = 0;
  for (int j = 1; j < 3; ++j)
    if (pp[j] > pp[axis]) axis = j;
  bool tie = false;
  for (int j = 0; j < 3; ++j)
    if (j != axis && pp[j] == pp[axis]) tie = true;
  return {axis + 1, pp[axis], tie};
}

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("read failure: " + path);
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + out_path);
  f << text;
  f.flush();
  if (!f) throw IoError("write failure: " + out_path);
}

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON for ") + what + ": " + e.what());
  }
}

// inline JSON wins over a file when both are given
json load_input(const std::string& inline_json, const std::string& file_path, const char* what) {
  if (!inline_json.empty()) return parse_json_text(inline_json, what);
  if (!file_path.empty()) return parse_json_text(read_file(file_path), what);
  throw std::invalid_argument(std::string("missing required input: ") + what);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PAULI_COMPAT_SEED")) {
    try {
      size_t used = 0;
      std::string s(env);
      std::uint64_t v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw std::invalid_argument("PAULI_COMPAT_SEED must be an unsigned integer");
    }
  }
  return 0;
}

/// Direction of the verdict in the Pauli normal-form frame.
Vec3 reduce_direction(const ChannelInput& in, const Vec3& n) {
  if (!in.from_bloch) return n;
  return mat3_apply(mat3_transpose(in.v_rotation), n);
}

struct CommonInputs {
  std::string channel_json, channel_file;
  std::string obs_json, obs_file;
  std::string n_json;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  double tol = -1.0;  // unset

  void add_channel(CLI::App* cmd) {
    cmd->add_option("--channel", channel_json, "channel as inline JSON");
    cmd->add_option("--channel-file", channel_file, "channel JSON file");
  }
  void add_obs(CLI::App* cmd) {
    cmd->add_option("--obs", obs_json, "observable as inline JSON");
    cmd->add_option("--obs-file", obs_file, "observable JSON file");
  }
  void add_n(CLI::App* cmd) { cmd->add_option("--n", n_json, "direction as JSON [x,y,z]"); }
  void add_out(CLI::App* cmd) { cmd->add_option("--out", out_path, "write output to file"); }
  void add_seed(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (overrides PAULI_COMPAT_SEED)");
  }
  void add_tol(CLI::App* cmd) {
    cmd->add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
  }

  ChannelInput channel() const { return parse_channel(load_input(channel_json, channel_file, "channel")); }
  UnbiasedBinaryObservable observable() const {
    return parse_observable(load_input(obs_json, obs_file, "observable"));
  }
  Vec3 direction() const {
    if (n_json.empty()) throw std::invalid_argument("missing required input: direction --n");
    return parse_vec3(parse_json_text(n_json, "direction"));
  }
};

json degenerate_axes_json(const CompatibilityVerdict& v) {
  json axes = json::array();
  for (int j = 0; j < 3; ++j)
    if (v.degenerate_axes[j]) axes.push_back(j + 1);
  return axes;
}

int run_check(const CommonInputs& in, std::ostream& out) {
  ChannelInput ch = in.channel();
  UnbiasedBinaryObservable obs = in.observable();
  Vec3 n = reduce_direction(ch, obs.direction());
  UnbiasedBinaryObservable reduced(obs.sharpness(), obs.sharpness() == 0.0 ? Vec3{0, 0, 1} : n);
  CompatibilityVerdict v =
      is_compatible(reduced, ch.channel, in.tol > 0 ? in.tol : 1e-12);
  json j{{"compatible", v.compatible},
         {"s_max", v.s_max},
         {"ellipsoid_lhs", v.ellipsoid_lhs},
         {"degenerate_axes", degenerate_axes_json(v)}};
  emit(dump_json(j) + "\n", in.out_path, out);
  return 0;
}

int run_smax(const CommonInputs& in, std::ostream& out) {
  ChannelInput ch = in.channel();
  Vec3 n = reduce_direction(ch, in.direction());
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", s_max(ch.channel, n));
  emit(std::string(buf) + "\n", in.out_path, out);
  return 0;
}

int run_certify(const CommonInputs& in, const std::string& check_path, std::ostream& out) {
  ChannelInput ch = in.channel();
  Vec3 n = reduce_direction(ch, in.direction());
  double tol = in.tol > 0 ? in.tol : 1e-9;

  if (!check_path.empty()) {
    DualCertificate cert = parse_certificate(parse_json_text(read_file(check_path), "certificate"));
    CertificateCheckResult res = certificate_check(cert, ch.channel, n, tol);
    json j{{"feasible", res.feasible}, {"upper_bound", res.upper_bound}};
    emit(dump_json(j) + "\n", in.out_path, out);
    return 0;
  }

  DualCertificate cert = dual_certificate(ch.channel, n);
  double smax = s_max(ch.channel, n);
  double gap = cert.lambda.real_trace() - smax;
  CertificateCheckResult res = certificate_check(cert, ch.channel, n, tol);
  if (!res.feasible) throw std::runtime_error("constructed certificate failed its feasibility check");
  emit(dump_json(encode_certificate(cert, smax, gap)) + "\n", in.out_path, out);
  return 0;
}

int run_family(const std::string& name, double param, const CommonInputs& in, std::ostream& out) {
  json j{{"family", name}, {"param", param}};
  ChannelInput ch = parse_channel(j);
  emit(dump_json(encode_channel(ch.channel)) + "\n", in.out_path, out);
  return 0;
}

int run_region_ellipsoid(const CommonInputs& in, int count, std::ostream& out) {
  ChannelInput ch = in.channel();
  EllipsoidSamples samples = ellipsoid_sample(ch.channel, count);
  std::ostringstream ss;
  write_ellipsoid_csv(ss, samples);
  emit(ss.str(), in.out_path, out);
  return 0;
}

int run_region_simplex(const CommonInputs& in, int resolution, std::ostream& out) {
  UnbiasedBinaryObservable obs = in.observable();
  std::vector<SimplexNode> nodes = simplex_region_sample(obs, resolution);
  std::ostringstream ss;
  write_simplex_csv(ss, nodes);
  emit(ss.str(), in.out_path, out);
  return 0;
}

int run_verify_instrument(const CommonInputs& in, long trials, std::ostream& out) {
  ChannelInput chin = in.channel();
  const PauliChannel& ch = chin.channel;
  UnbiasedBinaryObservable obs = in.observable();
  Vec3 n = reduce_direction(chin, obs.direction());
  double s = obs.sharpness();

  double smax = obs.sharpness() == 0.0 ? 0.0 : s_max(ch, n);
  double realized = std::min(s, smax);
  // w*A'_opt + (1-w)*id/2 induces A_{w*s_max, n}
  ComplexMat aplus = ComplexMat::identity(4);
  aplus *= cplx(0.5);
  if (realized > 0.0) {
    OptimalPrimal prim = optimal_primal(ch, n);
    double w = realized / smax;
    aplus *= cplx(1.0 - w);
    aplus += cplx(w) * prim.a_prime_plus.mat();
  }
  HermitianOp plus(aplus);
  HermitianOp minus(ComplexMat::identity(4) - aplus);
  InstrumentCheck check = instrument_consistency(plus, minus, ch, trials, resolve_seed(in.seed));

  json j{{"compatible", realized >= s - 1e-12},
         {"s_requested", s},
         {"s_realized", realized},
         {"max_channel_error", check.max_channel_error},
         {"max_probability_error", check.max_probability_error},
         {"trials", check.trials}};
  emit(dump_json(j) + "\n", in.out_path, out);
  return 0;
}

int run_search(const CommonInputs& in, long iterations, std::ostream& out) {
  ChannelInput chin = in.channel();
  Vec3 n = reduce_direction(chin, in.direction());
  std::uint64_t seed = resolve_seed(in.seed);
  SearchReport report = primal_search(chin.channel, n, iterations, seed);
  DualCertificate cert = dual_certificate(chin.channel, n);
  double upper = cert.lambda.real_trace();
  json j{{"best_s", report.best_s},
         {"upper_bound", upper},
         {"gap", upper - report.best_s},
         {"seed", report.seed},
         {"iterations", report.iterations}};
  emit(dump_json(j) + "\n", in.out_path, out);
  return 0;
}

int run_sharpest(const CommonInputs& in, std::ostream& out) {
  ChannelInput ch = in.channel();
  SharpestDirection sd = sharpest_direction(ch.channel);
  json j{{"axis", sd.axis}, {"s_max", sd.value}, {"tie", sd.tie}};
  emit(dump_json(j) + "\n", in.out_path, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"compatibility of unbiased binary qubit observables with Pauli channels"};
  app.require_subcommand(1);

  CommonInputs in;

  CLI::App* check = app.add_subcommand("check", "compatibility verdict for an observable and a channel");
  in.add_channel(check);
  in.add_obs(check);
  in.add_tol(check);
  in.add_out(check);

  CLI::App* smax_cmd = app.add_subcommand("smax", "largest compatible sharpness along a direction");
  in.add_channel(smax_cmd);
  in.add_n(smax_cmd);
  in.add_out(smax_cmd);

  CLI::App* certify = app.add_subcommand("certify", "produce or check a dual optimality certificate");
  std::string check_path;
  in.add_channel(certify);
  in.add_n(certify);
  in.add_tol(certify);
  in.add_out(certify);
  certify->add_option("--check", check_path, "verify this certificate file instead of producing one");

  CLI::App* family = app.add_subcommand("family", "evaluate a named channel family");
  std::string family_name;
  double family_param = 0.0;
  family->add_option("--name", family_name, "depolarizing | phase-damping | measure-and-prepare | luders-z")
      ->required();
  family->add_option("--param", family_param, "family parameter")->required();
  in.add_out(family);

  CLI::App* regell = app.add_subcommand("region-ellipsoid", "sample the compatible-observable boundary");
  int count = 1000;
  in.add_channel(regell);
  regell->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);
  in.add_out(regell);

  CLI::App* regsim = app.add_subcommand("region-simplex", "compatibility over the Pauli simplex grid");
  int resolution = 25;
  in.add_obs(regsim);
  regsim->add_option("--resolution", resolution, "barycentric grid resolution")
      ->check(CLI::Range(2, 1000000));
  in.add_out(regsim);

  CLI::App* verins = app.add_subcommand("verify-instrument", "Monte-Carlo instrument consistency run");
  long trials = 100;
  in.add_channel(verins);
  in.add_obs(verins);
  verins->add_option("--trials", trials, "number of random states")->check(CLI::PositiveNumber);
  in.add_seed(verins);
  in.add_out(verins);

  CLI::App* search = app.add_subcommand("search", "randomized primal lower bound with dual gap");
  long iterations = 10000;
  in.add_channel(search);
  in.add_n(search);
  search->add_option("--iterations", iterations, "search iterations")->check(CLI::PositiveNumber);
  in.add_seed(search);
  in.add_out(search);

  CLI::App* sharpest = app.add_subcommand("sharpest", "axis with the largest compatible sharpness");
  in.add_channel(sharpest);
  in.add_out(sharpest);

  std::vector<const char*> argv;
  argv.push_back("pauli-compat");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: usage: " << e.what() << "\n";
      return 1;
    }

    if (check->parsed()) return run_check(in, out);
    if (smax_cmd->parsed()) return run_smax(in, out);
    if (certify->parsed()) return run_certify(in, check_path, out);
    if (family->parsed()) return run_family(family_name, family_param, in, out);
    if (regell->parsed()) return run_region_ellipsoid(in, count, out);
    if (regsim->parsed()) return run_region_simplex(in, resolution, out);
    if (verins->parsed()) return run_verify_instrument(in, trials, out);
    if (search->parsed()) return run_search(in, iterations, out);
    if (sharpest->parsed()) return run_sharpest(in, out);
    err << "error: usage: no command given\n";
    return 1;
  } catch (const IoError& e) {
    err << "error: io: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: domain: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pauli_compat
