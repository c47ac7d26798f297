#include "convexlab/body_spec.hpp"

namespace convexlab::geometry {

namespace {

using nlohmann::json;

Vector to_vector(const json& j, const char* field) {
  if (!j.is_array()) throw ConfigError(std::string(field) + " must be an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string(field) + " must contain numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

// Array of rows -> matrix.
Matrix to_matrix(const json& j, const char* field) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(field) + " must be a nonempty array of rows");
  const Vector first = to_vector(j[0], field);
  Matrix m(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = to_vector(j[i], field);
    if (row.size() != first.size()) throw ConfigError(std::string(field) + " has ragged rows");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

Eigen::Index require_dim(const json& spec) {
  if (!spec.contains("dim")) throw ConfigError("body spec needs \"dim\"");
  const auto& d = spec.at("dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) {
    throw ConfigError("body \"dim\" must be a positive integer");
  }
  return static_cast<Eigen::Index>(d.get<long long>());
}

}  // namespace

ParsedBody parse_body(const json& spec) {
  if (!spec.is_object() || !spec.contains("type")) throw ConfigError("body spec needs a \"type\"");
  const std::string type = spec.at("type").get<std::string>();
  const bool has_map = spec.contains("map") || spec.contains("shift");

  ParsedBody out{named_body("ball", 1), false};
  if (type == "cube" || type == "simplex" || type == "cross" ||
      (type == "ball" && !spec.contains("radius") && !spec.contains("center"))) {
    out.body = named_body(type, require_dim(spec));
    out.centered = true;
  } else if (type == "ball") {
    const double radius = spec.value("radius", 1.0);
    Vector center = spec.contains("center") ? to_vector(spec.at("center"), "center")
                                            : Vector::Zero(require_dim(spec));
    out.centered = center.isZero(0.0);
    out.body = ConvexBody::ball(std::move(center), radius).with_label("ball");
  } else if (type == "hpoly") {
    if (!spec.contains("A") || !spec.contains("b")) throw ConfigError("hpoly needs \"A\" and \"b\"");
    out.body = ConvexBody::h_polytope(to_matrix(spec.at("A"), "A"), to_vector(spec.at("b"), "b"))
                   .with_label("hpoly");
  } else if (type == "vpoly") {
    if (!spec.contains("vertices")) throw ConfigError("vpoly needs \"vertices\"");
    out.body = ConvexBody::v_polytope(to_matrix(spec.at("vertices"), "vertices").transpose())
                   .with_label("vpoly");
  } else {
    throw ConfigError("unknown body type '" + type + "'");
  }

  if (spec.contains("dim") && require_dim(spec) != out.body.dim()) {
    throw ConfigError("\"dim\" is " + std::to_string(require_dim(spec)) + " but the body lives in R^" +
                      std::to_string(out.body.dim()));
  }

  if (has_map) {
    const Eigen::Index n = out.body.dim();
    const Matrix map = spec.contains("map") ? to_matrix(spec.at("map"), "map") : Matrix::Identity(n, n);
    const Vector shift = spec.contains("shift") ? to_vector(spec.at("shift"), "shift") : Vector::Zero(n);
    if (map.rows() != n || map.cols() != n || shift.size() != n) {
      throw ConfigError("\"map\" must be n x n and \"shift\" an n-vector");
    }
    out.body = affine_image(out.body, map, shift);
    out.centered = out.centered && shift.isZero(0.0);
  }
  return out;
}

}  // namespace convexlab::geometry
