#include "pauli_compat/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pauli_compat {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("cannot serialize non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void dump_rec(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ", ";
        first = false;
        out += json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const json& v : j) {
        if (!first) out += ", ";
        first = false;
        dump_rec(v, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
      break;
  }
}

double get_number(const json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string("expected a number for ") + what);
  return j.get<double>();
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  dump_rec(j, out);
  return out;
}

Vec3 parse_vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
  return {get_number(j[0], "vector entry"), get_number(j[1], "vector entry"),
          get_number(j[2], "vector entry")};
}

json encode_vec3(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

UnbiasedBinaryObservable parse_observable(const json& j) {
  if (!j.is_object() || !j.contains("s") || !j.contains("n"))
    throw std::invalid_argument("observable JSON must be {\"s\": number, \"n\": [x,y,z]}");
  return UnbiasedBinaryObservable(get_number(j["s"], "sharpness"), parse_vec3(j["n"]));
}

json encode_observable(const UnbiasedBinaryObservable& obs) {
  return json{{"s", obs.sharpness()}, {"n", encode_vec3(obs.direction())}};
}

ChannelInput parse_channel(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("channel JSON must be an object");

  if (j.contains("p")) {
    const json& p = j["p"];
    if (!p.is_array() || p.size() != 4)
      throw std::invalid_argument("channel key \"p\" must hold a probability 4-vector");
    Vec4 v{get_number(p[0], "p0"), get_number(p[1], "p1"), get_number(p[2], "p2"),
           get_number(p[3], "p3")};
    return {PauliChannel(v), mat3_identity(), false};
  }

  if (j.contains("family")) {
    if (!j.contains("param")) throw std::invalid_argument("channel family needs a \"param\" value");
    std::string name = j["family"].get<std::string>();
    for (char& c : name)
      if (c == '-') c = '_';
    double param = get_number(j["param"], "family parameter");
    PauliChannel ch = [&] {
      if (name == "depolarizing") return depolarizing(param);
      if (name == "phase_damping") return phase_damping(param);
      if (name == "measure_and_prepare") return measure_and_prepare(param);
      if (name == "luders_z") return luders_z(param);
      throw std::invalid_argument("unknown channel family: " + name);
    }();
    return {ch, mat3_identity(), false};
  }

  if (j.contains("bloch")) {
    const json& b = j["bloch"];
    if (!b.is_array() || b.size() != 3)
      throw std::invalid_argument("channel key \"bloch\" must hold a 3x3 matrix");
    Mat3 m{};
    for (int r = 0; r < 3; ++r) {
      if (!b[r].is_array() || b[r].size() != 3)
        throw std::invalid_argument("channel key \"bloch\" must hold a 3x3 matrix");
      for (int c = 0; c < 3; ++c) m[r][c] = get_number(b[r][c], "bloch entry");
    }
    UnitalDecomposition d = unital_decompose(m);
    return {PauliChannel(d.p), unitary_to_rotation(d.V), true};
  }

  throw std::invalid_argument("channel JSON needs one of the keys \"p\", \"family\", \"bloch\"");
}

json encode_channel(const PauliChannel& ch) {
  const Vec4& p = ch.probabilities();
  return json{{"p", json::array({p[0], p[1], p[2], p[3]})}};
}

json encode_certificate(const DualCertificate& cert, double s_max_value, double gap) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < 4; ++r) {
    json row_re = json::array(), row_im = json::array();
    for (int c = 0; c < 4; ++c) {
      row_re.push_back(cert.lambda(r, c).real());
      row_im.push_back(cert.lambda(r, c).imag());
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  return json{{"s_max", s_max_value},
              {"m", encode_vec3(cert.m)},
              {"lambda_re", re},
              {"lambda_im", im},
              {"gap", gap}};
}

DualCertificate parse_certificate(const json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("lambda_re") || !j.contains("lambda_im"))
    throw std::invalid_argument("certificate JSON needs keys \"m\", \"lambda_re\", \"lambda_im\"");
  Vec3 m = parse_vec3(j["m"]);
  const json& re = j["lambda_re"];
  const json& im = j["lambda_im"];
  if (!re.is_array() || re.size() != 4 || !im.is_array() || im.size() != 4)
    throw std::invalid_argument("certificate lambda must be 4x4");
  ComplexMat lambda(4, 4);
  for (int r = 0; r < 4; ++r) {
    if (!re[r].is_array() || re[r].size() != 4 || !im[r].is_array() || im[r].size() != 4)
      throw std::invalid_argument("certificate lambda must be 4x4");
    for (int c = 0; c < 4; ++c)
      lambda(r, c) = cplx(get_number(re[r][c], "lambda entry"), get_number(im[r][c], "lambda entry"));
  }
  return {HermitianOp(lambda), m};
}

namespace {

const char* geometry_name(RegionGeometry g) {
  switch (g) {
    case RegionGeometry::ellipsoid: return "ellipsoid";
    case RegionGeometry::segment: return "segment";
    default: return "point";
  }
}

}  // namespace

void write_ellipsoid_csv(std::ostream& os, const EllipsoidSamples& samples) {
  os << "# pauli-compat region v1\n";
  os << "# geometry: " << geometry_name(samples.geometry) << "\n";
  os << "x,y,z\n";
  for (const Vec3& p : samples.points)
    os << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(p[2]) << '\n';
}

void write_simplex_csv(std::ostream& os, const std::vector<SimplexNode>& nodes) {
  os << "# pauli-compat region v1\n";
  os << "p0,p1,p2,p3,compatible\n";
  for (const SimplexNode& n : nodes) {
    os << format_double(n.p[0]) << ',' << format_double(n.p[1]) << ',' << format_double(n.p[2])
       << ',' << format_double(n.p[3]) << ',' << (n.compatible ? 1 : 0) << '\n';
  }
}

}  // namespace pauli_compat
