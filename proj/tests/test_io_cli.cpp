#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "pauli_compat/cli.hpp"
#include "pauli_compat/json_io.hpp"
#include "pauli_compat/verify.hpp"

using namespace pauli_compat;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("dump_json prints floats at 12 significant digits") {
  CHECK(dump_json(json{{"x", 1.0 / 3.0}}) == "{\"x\": 0.333333333333}");
  CHECK(dump_json(json{{"x", 1.0}}) == "{\"x\": 1}");
  CHECK(dump_json(json::array({true, 7, "a"})) == "[true, 7, \"a\"]");
  CHECK(dump_json(json{{"seed", std::uint64_t(1234567890123456789ULL)}}) ==
        "{\"seed\": 1234567890123456789}");
}

TEST_CASE("observable and channel JSON round-trips") {
  UnbiasedBinaryObservable obs(0.8, normalized({1, 1, 0}));
  UnbiasedBinaryObservable back = parse_observable(json::parse(dump_json(encode_observable(obs))));
  CHECK(back.sharpness() == obs.sharpness());
  for (int j = 0; j < 3; ++j)
    CHECK(back.direction()[j] == doctest::Approx(obs.direction()[j]).epsilon(1e-12));

  PauliChannel ch({0.4, 0.3, 0.2, 0.1});
  ChannelInput parsed = parse_channel(json::parse(dump_json(encode_channel(ch))));
  CHECK_FALSE(parsed.from_bloch);
  for (int j = 0; j < 4; ++j)
    CHECK(parsed.channel[j] == doctest::Approx(ch[j]).epsilon(1e-12));
}

TEST_CASE("channel JSON forms") {
  ChannelInput fam = parse_channel(json::parse(R"({"family":"measure-and-prepare","param":0.5})"));
  CHECK(fam.channel.probabilities() == measure_and_prepare(0.5).probabilities());

  ChannelInput bloch = parse_channel(json::parse(R"({"bloch":[[0.5,0,0],[0,0.5,0],[0,0,0.5]]})"));
  CHECK(bloch.from_bloch);
  CHECK(bloch.channel[0] == doctest::Approx(0.625).epsilon(1e-12));

  CHECK_THROWS_AS(parse_channel(json::parse(R"({"family":"unknown","param":0.5})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_channel(json::parse(R"({"p":[0.5,0.5]})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_channel(json::parse(R"({})")), std::invalid_argument);
}

TEST_CASE("certificate JSON round-trips through the checker") {
  PauliChannel ch({0.4, 0.3, 0.2, 0.1});
  Vec3 n = normalized({1, 2, 3});
  DualCertificate cert = dual_certificate(ch, n);
  json encoded = encode_certificate(cert, s_max(ch, n), 0.0);
  DualCertificate back = parse_certificate(json::parse(dump_json(encoded)));
  CertificateCheckResult res = certificate_check(back, ch, n);
  CHECK(res.feasible);
  CHECK(std::abs(res.upper_bound - s_max(ch, n)) <= 1e-9);
}

TEST_CASE("cli check matches the depolarizing reference") {
  CliResult r = cli({"check", "--channel", R"({"family":"depolarizing","param":0.3333333333})",
                     "--obs", R"({"s":0.6,"n":[0,0,1]})"});
  CHECK(r.exit_code == 0);
  CHECK(r.err.empty());
  json j = json::parse(r.out);
  CHECK(j["compatible"] == true);
  // param 0.3333333333 leaves p0 = 1e-10, so s_max sits just above 2/3
  CHECK(j["s_max"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(2e-5));
  CHECK(j["s_max"].get<double>() >= 2.0 / 3.0);

  // key order and digits are deterministic
  CliResult again = cli({"check", "--channel", R"({"family":"depolarizing","param":0.3333333333})",
                         "--obs", R"({"s":0.6,"n":[0,0,1]})"});
  CHECK(again.out == r.out);
}

TEST_CASE("cli smax prints a bare number") {
  CliResult r = cli({"smax", "--channel", R"({"p":[1,0,0,0]})", "--n", "[1,0,0]"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\n");
}

TEST_CASE("cli certify emits a checkable certificate") {
  CliResult r = cli({"certify", "--channel", R"({"p":[0.4,0.3,0.2,0.1]})", "--n", "[0,0,1]"});
  REQUIRE(r.exit_code == 0);
  json cert = json::parse(r.out);
  CHECK(std::abs(cert["gap"].get<double>()) <= 1e-10);
  CHECK(cert["lambda_re"].size() == 4);

  std::string path = "certify_roundtrip_test.json";
  {
    std::ofstream f(path);
    f << r.out;
  }
  CliResult checked = cli({"certify", "--channel", R"({"p":[0.4,0.3,0.2,0.1]})", "--n", "[0,0,1]",
                           "--check", path});
  std::remove(path.c_str());
  REQUIRE(checked.exit_code == 0);
  json res = json::parse(checked.out);
  CHECK(res["feasible"] == true);
  CHECK(res["upper_bound"].get<double>() ==
        doctest::Approx(s_max(PauliChannel({0.4, 0.3, 0.2, 0.1}), {0, 0, 1})).epsilon(1e-9));
}

TEST_CASE("cli certify handles degenerate directions with the trivial bound") {
  CliResult r = cli({"certify", "--channel", R"({"family":"phase-damping","param":0.5})",
                     "--n", "[1,0,0]"});
  REQUIRE(r.exit_code == 0);
  json cert = json::parse(r.out);
  CHECK(cert["s_max"].get<double>() == 0.0);
  CHECK(cert["gap"].get<double>() == 0.0);
  CHECK(cert["m"][0].get<double>() == 1.0);
  for (const auto& row : cert["lambda_re"])
    for (const auto& v : row) CHECK(v.get<double>() == 0.0);
}

TEST_CASE("cli family evaluates the named families") {
  CliResult r = cli({"family", "--name", "luders-z", "--param", "1"});
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["p"][0].get<double>() == 0.5);
  CHECK(j["p"][3].get<double>() == 0.5);
}

TEST_CASE("cli region exports are deterministic and well-formed") {
  CliResult a = cli({"region-ellipsoid", "--channel", R"({"p":[0.25,0.25,0.25,0.25]})",
                     "--count", "50"});
  CliResult b = cli({"region-ellipsoid", "--channel", R"({"p":[0.25,0.25,0.25,0.25]})",
                     "--count", "50"});
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# pauli-compat region v1\n# geometry: ellipsoid\nx,y,z\n", 0) == 0);

  CliResult seg = cli({"region-ellipsoid", "--channel", R"({"family":"phase-damping","param":0.5})",
                       "--count", "5"});
  CHECK(seg.out.find("# geometry: segment") != std::string::npos);

  CliResult simplex =
      cli({"region-simplex", "--obs", R"({"s":0,"n":[0,0,1]})", "--resolution", "5"});
  CHECK(simplex.exit_code == 0);
  CHECK(simplex.out.rfind("# pauli-compat region v1\np0,p1,p2,p3,compatible\n", 0) == 0);
  std::istringstream lines(simplex.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.back() == '1');  // trivial observable: everything compatible
    ++rows;
  }
  CHECK(rows == 35);  // C(4+3-1? ) = C(7,3): nodes of the resolution-5 grid
}

TEST_CASE("cli verify-instrument reports tiny errors on compatible instances") {
  CliResult r = cli({"verify-instrument", "--channel", R"({"p":[0.4,0.3,0.2,0.1]})", "--obs",
                     R"({"s":0.3,"n":[0,0,1]})", "--trials", "25", "--seed", "5"});
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["compatible"] == true);
  CHECK(j["s_realized"].get<double>() == 0.3);
  CHECK(j["max_channel_error"].get<double>() <= 1e-9);
  CHECK(j["max_probability_error"].get<double>() <= 1e-9);
}

TEST_CASE("cli verify-instrument clamps incompatible requests to the boundary") {
  CliResult r = cli({"verify-instrument", "--channel", R"({"family":"depolarizing","param":0.05})",
                     "--obs", R"({"s":0.95,"n":[0,0,1]})", "--trials", "10", "--seed", "2"});
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["compatible"] == false);
  double smax = s_max(depolarizing(0.05), {0, 0, 1});
  CHECK(j["s_realized"].get<double>() == doctest::Approx(smax).epsilon(1e-12));
  CHECK(j["max_channel_error"].get<double>() <= 1e-9);
  CHECK(j["max_probability_error"].get<double>() <= 1e-9);

  // fully degenerate direction: only the trivial instrument survives
  CliResult deg = cli({"verify-instrument", "--channel", R"({"family":"luders-z","param":0.8})",
                       "--obs", R"({"s":0.4,"n":[1,0,0]})", "--trials", "10"});
  REQUIRE(deg.exit_code == 0);
  json dj = json::parse(deg.out);
  CHECK(dj["compatible"] == false);
  CHECK(dj["s_realized"].get<double>() == 0.0);
  CHECK(dj["max_channel_error"].get<double>() <= 1e-9);
}

TEST_CASE("cli search respects seed precedence") {
  std::vector<std::string> base{"search", "--channel", R"({"p":[0.4,0.3,0.2,0.1]})",
                                "--n", "[0,0,1]", "--iterations", "400"};
  setenv("PAULI_COMPAT_SEED", "99", 1);
  CliResult env_run = cli(base);
  unsetenv("PAULI_COMPAT_SEED");

  std::vector<std::string> with_seed = base;
  with_seed.insert(with_seed.end(), {"--seed", "99"});
  CliResult flag_run = cli(with_seed);
  CHECK(env_run.out == flag_run.out);

  json j = json::parse(flag_run.out);
  CHECK(j["seed"] == 99);
  CHECK(j["iterations"] == 400);
  CHECK(j["gap"].get<double>() >= -1e-9);

  setenv("PAULI_COMPAT_SEED", "not-a-number", 1);
  CliResult bad = cli(base);
  unsetenv("PAULI_COMPAT_SEED");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.rfind("error: domain:", 0) == 0);
}

TEST_CASE("cli sharpest") {
  CliResult r = cli({"sharpest", "--channel", R"({"family":"phase-damping","param":0.9})"});
  json j = json::parse(r.out);
  CHECK(j["axis"] == 3);
  CHECK(j["s_max"].get<double>() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(j["tie"] == false);

  CliResult tie = cli({"sharpest", "--channel", R"({"family":"depolarizing","param":0.1})"});
  json tj = json::parse(tie.out);
  CHECK(tj["axis"] == 1);
  CHECK(tj["tie"] == true);

  // the argmax is invariant under the probability-vector permutations
  PauliChannel ch({0.5, 0.25, 0.15, 0.1});
  SharpestDirection base = sharpest_direction(ch);
  for (const PauliChannel& perm : permuted_channels(ch)) {
    SharpestDirection p = sharpest_direction(perm);
    CHECK(p.axis == base.axis);
    CHECK(p.value == base.value);
  }
}

TEST_CASE("cli error taxonomy") {
  CliResult domain = cli({"check", "--channel", R"({"p":[0.9,0.3,0,0]})", "--obs",
                          R"({"s":0.5,"n":[0,0,1]})"});
  CHECK(domain.exit_code == 1);
  CHECK(domain.err.rfind("error: domain:", 0) == 0);
  CHECK(domain.err.find('\n') == domain.err.size() - 1);  // single line

  CliResult badjson = cli({"check", "--channel", "{", "--obs", R"({"s":0.5,"n":[0,0,1]})"});
  CHECK(badjson.exit_code == 1);
  CHECK(badjson.err.rfind("error: domain:", 0) == 0);

  CliResult io = cli({"check", "--channel-file", "does_not_exist.json", "--obs",
                      R"({"s":0.5,"n":[0,0,1]})"});
  CHECK(io.exit_code == 2);
  CHECK(io.err.rfind("error: io:", 0) == 0);

  CliResult usage = cli({"frobnicate"});
  CHECK(usage.exit_code == 1);
  CHECK(usage.err.rfind("error: usage:", 0) == 0);

  CliResult missing = cli({"smax", "--n", "[0,0,1]"});
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.rfind("error: domain:", 0) == 0);
}

TEST_CASE("cli inline JSON wins over file input") {
  std::string path = "inline_wins_test.json";
  {
    std::ofstream f(path);
    f << R"({"p":[1,0,0,0]})";
  }
  CliResult r = cli({"smax", "--channel", R"({"p":[0.25,0.25,0.25,0.25]})", "--channel-file", path,
                     "--n", "[0,0,1]"});
  std::remove(path.c_str());
  CHECK(r.out == "1\n");
}

TEST_CASE("cli --out writes files and reports io failures") {
  std::string path = "cli_out_test.json";
  CliResult r = cli({"check", "--channel", R"({"p":[0.25,0.25,0.25,0.25]})", "--obs",
                     R"({"s":0.5,"n":[0,0,1]})", "--out", path});
  CHECK(r.exit_code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  json j;
  f >> j;
  CHECK(j["compatible"] == true);
  f.close();
  std::remove(path.c_str());

  CliResult bad = cli({"check", "--channel", R"({"p":[0.25,0.25,0.25,0.25]})", "--obs",
                       R"({"s":0.5,"n":[0,0,1]})", "--out", "no_such_dir/x.json"});
  CHECK(bad.exit_code == 2);
}

TEST_CASE("cli accepts general unital channels via bloch matrices") {
  // R_x(pi) composed with the phase damping channel of p = 0.8:
  // bloch action diag(0.6, -0.6, -1), s_max along z stays 2 sqrt(0.8*0.2) = 0.8
  CliResult r = cli({"smax", "--channel", R"({"bloch":[[0.6,0,0],[0,-0.6,0],[0,0,-1]]})",
                     "--n", "[0,0,1]"});
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "0.8\n");

  // phase damping preceded by a pi/2 rotation about x: the surviving
  // direction moves from z to y, whatever decomposition is picked internally
  std::string pre_rotated = R"({"bloch":[[0.6,0,0],[0,0,0.6],[0,-1,0]]})";
  CliResult along_y = cli({"smax", "--channel", pre_rotated, "--n", "[0,1,0]"});
  CHECK(along_y.out == "0.8\n");
  CliResult along_z = cli({"smax", "--channel", pre_rotated, "--n", "[0,0,1]"});
  CHECK(along_z.out == "0\n");

  CliResult verdict = cli({"check", "--channel", pre_rotated, "--obs", R"({"s":0.5,"n":[0,1,0]})"});
  CHECK(json::parse(verdict.out)["compatible"] == true);
}

TEST_CASE("cli tolerance override widens the verdict boundary") {
  // depolarizing(0.1): s_max = 2(0.1 + sqrt(0.07)) ~ 0.729; s = 0.75 fails
  // at the default tolerance and passes with a loose one
  std::vector<std::string> base{"check", "--channel", R"({"family":"depolarizing","param":0.1})",
                                "--obs", R"({"s":0.75,"n":[0,0,1]})"};
  CliResult strict = cli(base);
  CHECK(json::parse(strict.out)["compatible"] == false);

  std::vector<std::string> loose = base;
  loose.insert(loose.end(), {"--tol", "0.1"});
  CliResult relaxed = cli(loose);
  CHECK(json::parse(relaxed.out)["compatible"] == true);

  std::vector<std::string> bad = base;
  bad.insert(bad.end(), {"--tol", "-1"});
  CHECK(cli(bad).exit_code == 1);
}
