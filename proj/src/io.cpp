#include "lrc/io.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "lrc/error.hpp"

namespace lrc::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::FormatError, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad(std::string("bad value for ") + what);
  }
}

}  // namespace

json field_to_json(const galois::Field& f) {
  return json{{"p", f.p()}, {"w", f.w()}, {"modulus", f.modulus()}};
}

std::shared_ptr<const galois::Field> field_from_json(const json& j) {
  const auto p = as<std::uint32_t>(member(j, "p"), "p");
  const auto w = as<std::uint32_t>(member(j, "w"), "w");
  auto f = galois::Field::create(p, w);
  if (j.contains("modulus") && as<std::vector<std::uint32_t>>(j.at("modulus"), "modulus") != f->modulus()) {
    throw Error(ErrorKind::SpecMismatch, "stored modulus differs from the canonical modulus of GF(" +
                                             std::to_string(f->q()) + ")");
  }
  return f;
}

json element_to_json(const galois::Field& f, galois::Elem x) { return f.coeffs(x); }

galois::Elem element_from_json(const galois::Field& f, const json& j) {
  const auto c = as<std::vector<std::uint32_t>>(j, "element");
  return f.from_coeffs(c);
}

json places_to_json(const galois::Field& f, std::span<const tower::TowerPlace> places) {
  json out = json::array();
  for (const auto& place : places) {
    json coords = json::array();
    for (auto c : place.coords) coords.push_back(element_to_json(f, c));
    out.push_back(std::move(coords));
  }
  return out;
}

json orbits_to_json(const std::vector<std::vector<std::size_t>>& orbits) { return orbits; }

json code_to_json(const codes::LinearCode& code) {
  const auto& f = code.gf();
  json j;
  j["field"] = field_to_json(f);
  j["n"] = code.n;
  j["k"] = code.k;
  j["r"] = code.r;
  j["construction"] = std::string(codes::to_string(code.meta.construction));
  if (code.meta.construction == codes::Construction::rational_aut) {
    j["params"] = json{{"u", code.meta.u.value_or(0)}, {"v", code.meta.v.value_or(0)}, {"s", code.meta.s.value_or(0)}};
  } else {
    j["params"] = json{{"source", code.meta.source}};
  }
  json gen = json::array();
  for (std::size_t i = 0; i < code.k; ++i) {
    json row = json::array();
    for (auto x : code.generator.row(i)) row.push_back(element_to_json(f, x));
    gen.push_back(std::move(row));
  }
  j["generator"] = std::move(gen);
  j["repair_groups"] = code.repair_groups;
  json ys = json::array();
  for (auto y : code.y_values) ys.push_back(element_to_json(f, y));
  j["y_values"] = std::move(ys);
  j["d_lower"] = code.meta.d_lower ? json(*code.meta.d_lower) : json(nullptr);
  return j;
}

codes::LinearCode code_from_json(const json& j) {
  codes::LinearCode code;
  code.field = field_from_json(member(j, "field"));
  const auto& f = *code.field;
  code.n = as<std::size_t>(member(j, "n"), "n");
  code.k = as<std::size_t>(member(j, "k"), "k");
  code.r = as<std::uint64_t>(member(j, "r"), "r");

  const auto tag = as<std::string>(member(j, "construction"), "construction");
  const json& params = member(j, "params");
  if (tag == "rational-aut") {
    code.meta.construction = codes::Construction::rational_aut;
    code.meta.u = as<std::uint32_t>(member(params, "u"), "u");
    code.meta.v = as<std::uint32_t>(member(params, "v"), "v");
    code.meta.s = as<std::int64_t>(member(params, "s"), "s");
  } else if (tag == "naive" || tag == "custom") {
    code.meta.construction = tag == "naive" ? codes::Construction::naive : codes::Construction::custom;
    code.meta.source = as<std::string>(member(params, "source"), "source");
  } else {
    bad("unknown construction \"" + tag + "\"");
  }

  const json& gen = member(j, "generator");
  if (!gen.is_array() || gen.size() != code.k) bad("generator must have k rows");
  code.generator = codes::Matrix(code.k, code.n);
  for (std::size_t i = 0; i < code.k; ++i) {
    if (!gen[i].is_array() || gen[i].size() != code.n) bad("generator rows must have n entries");
    for (std::size_t c = 0; c < code.n; ++c) code.generator(i, c) = element_from_json(f, gen[i][c]);
  }
  code.repair_groups = as<std::vector<std::vector<std::size_t>>>(member(j, "repair_groups"), "repair_groups");
  if (j.contains("y_values")) {
    const json& ys = j.at("y_values");
    if (!ys.is_array()) bad("y_values must be an array");
    for (const auto& y : ys) code.y_values.push_back(element_from_json(f, y));
  }
  if (j.contains("d_lower") && !j.at("d_lower").is_null()) {
    code.meta.d_lower = as<std::int64_t>(j.at("d_lower"), "d_lower");
  }
  codes::validate(code);
  return code;
}

std::string canonical(const json& j) { return j.dump(); }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::FormatError, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::FormatError, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::FormatError, "cannot move output into " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FormatError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lrc::io
