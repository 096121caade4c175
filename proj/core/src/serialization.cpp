#include "fibral/serialization.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fibral/digest.hpp"
#include "fibral/error.hpp"

namespace fibral {

namespace {

using Json = nlohmann::ordered_json;

// Rationals travel as strings; bare JSON integers are tolerated on input.
// Anything with a fractional or floating representation is rejected.
Rational rational_field(const Json& value, const std::string& locus) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::NonRationalNumeral, locus + ": " + e.what());
    }
  }
  if (value.is_number_integer()) {
    std::ostringstream text;
    if (value.is_number_unsigned())
      text << value.get<std::uint64_t>();
    else
      text << value.get<std::int64_t>();
    return parse_rational(text.str());
  }
  if (value.is_number())
    throw Error(ErrorCode::NonRationalNumeral,
                locus + ": floating-point numerals are not accepted; write \"p/q\"");
  throw Error(ErrorCode::ParseError, locus + ": expected a rational string");
}

const Json& field(const Json& object, const char* key, const std::string& locus) {
  if (!object.is_object())
    throw Error(ErrorCode::ParseError, locus + ": expected an object");
  auto it = object.find(key);
  if (it == object.end())
    throw Error(ErrorCode::ParseError, locus + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const Json& object, const char* key, const std::string& locus) {
  const Json& value = field(object, key, locus);
  if (!value.is_string())
    throw Error(ErrorCode::ParseError, locus + "." + key + ": expected a string");
  return value.get<std::string>();
}

Integer integer_field(const Json& value, const std::string& locus) {
  Rational parsed = rational_field(value, locus);
  if (!is_integral(parsed))
    throw Error(ErrorCode::ParseError, locus + ": expected an integer");
  return parsed.get_num();
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

HorizontalProfile profile_from_json(const Json& node, const std::string& locus) {
  HorizontalProfile profile;
  profile.profile_id = string_field(node, "id", locus);
  profile.generic_degree = rational_field(field(node, "generic_degree", locus),
                                          locus + ".generic_degree");
  const Json& pairings = field(node, "pairings", locus);
  if (!pairings.is_object())
    throw Error(ErrorCode::ParseError, locus + ".pairings: expected an object");
  for (const auto& [place, components] : pairings.items()) {
    if (!components.is_object())
      throw Error(ErrorCode::ParseError, locus + ".pairings." + place + ": expected an object");
    for (const auto& [component, value] : components.items())
      profile.pairings[place][component] =
          rational_field(value, locus + ".pairings." + place + "." + component);
  }
  const Json& support = field(node, "support", locus);
  if (!support.is_array())
    throw Error(ErrorCode::ParseError, locus + ".support: expected an array");
  for (const Json& entry : support) {
    if (!entry.is_string())
      throw Error(ErrorCode::ParseError, locus + ".support: expected strings");
    if (!profile.support.insert(entry.get<std::string>()).second)
      throw Error(ErrorCode::DuplicateIdentifier,
                  locus + ".support: '" + entry.get<std::string>() + "' appears twice");
  }
  return profile;
}

Json profile_to_json(const HorizontalProfile& profile) {
  Json node;
  node["id"] = profile.profile_id;
  node["generic_degree"] = to_string(profile.generic_degree);
  Json pairings = Json::object();
  for (const auto& [place, components] : profile.pairings) {
    Json inner = Json::object();
    for (const auto& [component, value] : components) inner[component] = to_string(value);
    pairings[place] = std::move(inner);
  }
  node["pairings"] = std::move(pairings);
  node["support"] = Json::array();
  for (const std::string& id : profile.support) node["support"].push_back(id);
  return node;
}

FiberModel fiber_from_json(const Json& node, const std::string& locus) {
  FiberModel fiber;
  fiber.place_id = string_field(node, "id", locus);

  const Json& components = field(node, "components", locus);
  if (!components.is_array() || components.empty())
    throw Error(ErrorCode::ParseError, locus + ".components: expected a nonempty array");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const std::string item = locus + ".components[" + std::to_string(i) + "]";
    FiberComponent c;
    c.id = string_field(components[i], "id", item);
    if (!seen.insert(c.id).second)
      throw Error(ErrorCode::DuplicateIdentifier,
                  item + ": component '" + c.id + "' appears twice");
    c.multiplicity = integer_field(field(components[i], "multiplicity", item),
                                   item + ".multiplicity");
    fiber.components.push_back(std::move(c));
  }

  const Json& pairing = field(node, "pairing", locus);
  const std::size_t t = fiber.components.size();
  if (!pairing.is_array() || pairing.size() != t)
    throw Error(ErrorCode::ParseError,
                locus + ".pairing: expected a " + std::to_string(t) + "-row array");
  fiber.pairing = RationalMatrix(t, t);
  for (std::size_t i = 0; i < t; ++i) {
    if (!pairing[i].is_array() || pairing[i].size() != t)
      throw Error(ErrorCode::ParseError, locus + ".pairing[" + std::to_string(i) +
                                             "]: expected " + std::to_string(t) + " entries");
    for (std::size_t j = 0; j < t; ++j)
      fiber.pairing(i, j) = rational_field(
          pairing[i][j],
          locus + ".pairing[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  return fiber;
}

Json fiber_to_json(const FiberModel& fiber) {
  Json node;
  node["id"] = fiber.place_id;
  node["components"] = Json::array();
  for (const FiberComponent& c : fiber.components)
    node["components"].push_back(Json{{"id", c.id}, {"multiplicity", to_string(c.multiplicity)}});
  node["pairing"] = Json::array();
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < fiber.size(); ++j) row.push_back(to_string(fiber.pairing(i, j)));
    node["pairing"].push_back(std::move(row));
  }
  return node;
}

FibralDivisor divisor_from_json(const Json& node, const std::string& locus) {
  FibralDivisor divisor;
  divisor.place_id = string_field(node, "place", locus);
  const Json& coefficients = field(node, "coefficients", locus);
  if (!coefficients.is_object())
    throw Error(ErrorCode::ParseError, locus + ".coefficients: expected an object");
  for (const auto& [component, value] : coefficients.items())
    divisor.coefficients[component] =
        rational_field(value, locus + ".coefficients." + component);
  return divisor;
}

Json divisor_to_json(const FibralDivisor& divisor) {
  Json coefficients = Json::object();
  for (const auto& [component, value] : divisor.coefficients)
    coefficients[component] = to_string(value);
  return Json{{"place", divisor.place_id}, {"coefficients", std::move(coefficients)}};
}

Json log_to_json(const ConstructionLog& log) {
  Json steps = Json::array();
  for (const LogStep& step : log.steps) {
    Json node;
    node["op"] = step.op;
    Json in = Json::array();
    for (const auto& [key, value] : step.inputs) in.push_back(Json::array({key, value}));
    Json out = Json::array();
    for (const auto& [key, value] : step.outputs) out.push_back(Json::array({key, value}));
    node["in"] = std::move(in);
    node["out"] = std::move(out);
    steps.push_back(std::move(node));
  }
  return steps;
}

ConstructionLog log_from_json(const Json& node, const std::string& locus) {
  if (!node.is_array()) throw Error(ErrorCode::ParseError, locus + ": expected an array");
  ConstructionLog log;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string item = locus + "[" + std::to_string(i) + "]";
    LogStep step;
    step.op = string_field(node[i], "op", item);
    for (const char* side : {"in", "out"}) {
      const Json& pairs = field(node[i], side, item);
      if (!pairs.is_array())
        throw Error(ErrorCode::ParseError, item + "." + side + ": expected an array");
      for (const Json& pair : pairs) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
          throw Error(ErrorCode::ParseError, item + "." + side + ": expected [key,value] pairs");
        if (std::string(side) == "in")
          step.in(pair[0].get<std::string>(), pair[1].get<std::string>());
        else
          step.out(pair[0].get<std::string>(), pair[1].get<std::string>());
      }
    }
    log.steps.push_back(std::move(step));
  }
  return log;
}

Json witness_to_json(const Witness& witness) {
  Json node;
  node["id"] = witness.id;
  node["degree"] = to_string(witness.degree);
  node["scaling_exponent"] = to_string(witness.scaling_exponent);
  node["d1"] = profile_to_json(witness.d1);
  node["d2"] = profile_to_json(witness.d2);
  node["vertical"] = Json::array();
  for (const auto& [place, divisor] : witness.vertical)
    node["vertical"].push_back(divisor_to_json(divisor));
  node["log"] = log_to_json(witness.log);
  return node;
}

Witness witness_from_json(const Json& node, const std::string& locus) {
  Witness witness;
  witness.id = string_field(node, "id", locus);
  witness.degree = rational_field(field(node, "degree", locus), locus + ".degree");
  witness.scaling_exponent =
      integer_field(field(node, "scaling_exponent", locus), locus + ".scaling_exponent");
  witness.d1 = profile_from_json(field(node, "d1", locus), locus + ".d1");
  witness.d2 = profile_from_json(field(node, "d2", locus), locus + ".d2");
  const Json& vertical = field(node, "vertical", locus);
  if (!vertical.is_array())
    throw Error(ErrorCode::ParseError, locus + ".vertical: expected an array");
  for (std::size_t i = 0; i < vertical.size(); ++i) {
    FibralDivisor divisor =
        divisor_from_json(vertical[i], locus + ".vertical[" + std::to_string(i) + "]");
    if (witness.vertical.count(divisor.place_id))
      throw Error(ErrorCode::DuplicateIdentifier,
                  locus + ".vertical: place '" + divisor.place_id + "' appears twice");
    witness.vertical[divisor.place_id] = std::move(divisor);
  }
  witness.log = log_from_json(field(node, "log", locus), locus + ".log");
  return witness;
}

Json support_to_json(const std::set<std::string>& support) {
  Json node = Json::array();
  for (const std::string& id : support) node.push_back(id);
  return node;
}

std::set<std::string> support_from_json(const Json& node, const std::string& locus) {
  if (!node.is_array()) throw Error(ErrorCode::ParseError, locus + ": expected an array");
  std::set<std::string> support;
  for (const Json& entry : node) {
    if (!entry.is_string()) throw Error(ErrorCode::ParseError, locus + ": expected strings");
    if (!support.insert(entry.get<std::string>()).second)
      throw Error(ErrorCode::DuplicateIdentifier,
                  locus + ": '" + entry.get<std::string>() + "' appears twice");
  }
  return support;
}

}  // namespace

SurfaceModel load_surface(const std::string& text) {
  Json doc = parse_document(text);
  SurfaceModel surface;
  surface.name = string_field(doc, "name", "document");
  const Json& torsion = field(doc, "class_group_torsion", "document");
  if (!torsion.is_boolean())
    throw Error(ErrorCode::ParseError, "document.class_group_torsion: expected a boolean");
  surface.class_group_torsion = torsion.get<bool>();

  const Json& places = field(doc, "places", "document");
  if (!places.is_array())
    throw Error(ErrorCode::ParseError, "document.places: expected an array");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < places.size(); ++i) {
    FiberModel fiber = fiber_from_json(places[i], "places[" + std::to_string(i) + "]");
    if (!seen.insert(fiber.place_id).second)
      throw Error(ErrorCode::DuplicateIdentifier,
                  "places: place '" + fiber.place_id + "' appears twice");
    surface.places.push_back(std::move(fiber));
  }

  surface.ample = profile_from_json(field(doc, "ample", "document"), "ample");
  return surface;
}

SurfaceModel load_surface_file(const std::string& path) {
  return load_surface(read_text_file(path));
}

std::string serialize_surface(const SurfaceModel& surface) {
  Json doc;
  doc["name"] = surface.name;
  doc["class_group_torsion"] = surface.class_group_torsion;
  doc["places"] = Json::array();
  for (const FiberModel& fiber : surface.places) doc["places"].push_back(fiber_to_json(fiber));
  doc["ample"] = profile_to_json(surface.ample);
  return doc.dump(2) + "\n";
}

std::string surface_digest(const SurfaceModel& surface) {
  return sha256_hex(serialize_surface(surface));
}

std::string serialize_fiber_fragment(const FiberModel& fiber) {
  return fiber_to_json(fiber).dump(2) + "\n";
}

std::string witness_to_text(const Witness& witness) {
  return witness_to_json(witness).dump(2) + "\n";
}

Witness witness_from_text(const std::string& text) {
  return witness_from_json(parse_document(text), "witness");
}

std::string certificate_to_text(const MorphismCertificate& cert) {
  Json doc;
  doc["surface"] = cert.surface;
  doc["surface_digest"] = cert.surface_digest;
  doc["degree"] = to_string(cert.degree);
  doc["d1_support"] = support_to_json(cert.d1_support);
  doc["d2_support"] = support_to_json(cert.d2_support);
  doc["support_intersection"] = support_to_json(cert.support_intersection);
  doc["witness"] = witness_to_json(cert.final_witness);
  doc["log"] = log_to_json(cert.log);
  return doc.dump(2) + "\n";
}

MorphismCertificate certificate_from_text(const std::string& text) {
  Json doc = parse_document(text);
  MorphismCertificate cert;
  cert.surface = string_field(doc, "surface", "certificate");
  cert.surface_digest = string_field(doc, "surface_digest", "certificate");
  cert.degree = rational_field(field(doc, "degree", "certificate"), "certificate.degree");
  cert.d1_support = support_from_json(field(doc, "d1_support", "certificate"),
                                      "certificate.d1_support");
  cert.d2_support = support_from_json(field(doc, "d2_support", "certificate"),
                                      "certificate.d2_support");
  cert.support_intersection = support_from_json(
      field(doc, "support_intersection", "certificate"), "certificate.support_intersection");
  cert.final_witness =
      witness_from_json(field(doc, "witness", "certificate"), "certificate.witness");
  cert.log = log_from_json(field(doc, "log", "certificate"), "certificate.log");
  return cert;
}

MorphismCertificate certificate_from_file(const std::string& path) {
  return certificate_from_text(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failure on '" + path + "'");
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failure on '" + path + "'");
}

}  // namespace fibral
