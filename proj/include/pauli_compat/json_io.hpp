#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pauli_compat/compatibility.hpp"

namespace pauli_compat {

using json = nlohmann::json;

/// Serialize JSON with every floating-point value printed at 12 significant
/// digits ("%.12g"), integers verbatim, keys in sorted order. Deterministic
/// and locale-independent.
std::string dump_json(const json& j);

UnbiasedBinaryObservable parse_observable(const json& j);
json encode_observable(const UnbiasedBinaryObservable& obs);

/// Parsed channel input. Native Pauli inputs ({"p": ...} or
/// {"family": ..., "param": ...}) leave v_rotation at the identity; a general
/// unital channel {"bloch": [[...]]} is reduced to its Pauli normal form, and
/// a verdict for direction n must be taken against R(V)^T n.
struct ChannelInput {
  PauliChannel channel;
  Mat3 v_rotation;
  bool from_bloch;
};

ChannelInput parse_channel(const json& j);
json encode_channel(const PauliChannel& ch);

Vec3 parse_vec3(const json& j);
json encode_vec3(const Vec3& v);

json encode_certificate(const DualCertificate& cert, double s_max_value, double gap);
DualCertificate parse_certificate(const json& j);

void write_ellipsoid_csv(std::ostream& os, const EllipsoidSamples& samples);
void write_simplex_csv(std::ostream& os, const std::vector<SimplexNode>& nodes);

}  // namespace pauli_compat
