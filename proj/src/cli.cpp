#include "lrc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "lrc/bounds.hpp"
#include "lrc/codes.hpp"
#include "lrc/error.hpp"
#include "lrc/io.hpp"
#include "lrc/tower.hpp"

namespace lrc::cli {

namespace {

struct ReferenceList {
  std::uint64_t q;
  std::vector<std::int64_t> r;
};

// Published localities where the automorphism-tower bound beats GV at delta = 0.5.
const std::vector<ReferenceList>& reference_lists() {
  static const std::vector<ReferenceList> lists = {
      {256, {1, 2}},
      {1024, {1, 3, 7, 15, 30, 31}},
      {4096, {1, 2, 3, 6, 7, 8, 11, 15, 20, 31, 47, 55, 62, 63}},
      {729, {1, 2, 5, 8, 12, 17, 25, 26}},
      {6561, {1, 2, 3, 4, 5, 7, 8, 9, 15, 17, 19, 26, 35, 39, 53, 71, 79, 80}},
      {625, {1, 2, 3, 4, 5, 7, 9, 11, 19, 23, 24}},
      {15625, {1, 3, 4, 9, 19, 24, 30, 49, 61}},
      {390625, {1, 2, 3, 4, 5, 7, 9, 11, 12, 15, 19, 23, 24, 25, 38, 47, 49, 51}},
  };
  return lists;
}

[[noreturn]] void domain(const std::string& what) { throw Error(ErrorKind::DomainError, what); }

// "65536", "2^16" or "1.8e19".
double parse_real_q(const std::string& text) {
  const auto caret = text.find('^');
  try {
    if (caret == std::string::npos) return std::stod(text);
    return std::pow(std::stod(text.substr(0, caret)), std::stod(text.substr(caret + 1)));
  } catch (const std::exception&) {
    domain("cannot read q = \"" + text + "\"");
  }
}

std::uint64_t parse_int_q(const std::string& text) {
  const double q = parse_real_q(text);
  if (!(q >= 2.0) || q > 1.8e19 || std::floor(q) != q) domain("q = " + text + " is not an integer >= 2");
  return static_cast<std::uint64_t>(q);
}

std::shared_ptr<const galois::Field> field_of_size(const std::string& text) {
  const std::uint64_t q = parse_int_q(text);
  const auto pp = galois::prime_power(q);
  if (!pp) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
  return galois::Field::create(static_cast<std::uint32_t>(pp->p), pp->w);
}

std::vector<std::int64_t> admissible_localities(std::uint64_t q) {
  const auto pp = galois::prime_power(q);
  if (!pp) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
  if (pp->w % 2 != 0) throw Error(ErrorKind::NoSquareRoot, std::to_string(q) + " is not a square");
  std::vector<std::int64_t> out;
  for (const auto& a : tower::admissible_params(static_cast<std::uint32_t>(pp->p), pp->w / 2)) {
    out.push_back(static_cast<std::int64_t>(a.r));
  }
  return out;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    io::write_atomic(path, content);
  }
}

codes::LinearCode load_code(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, path + ": " + e.what());
  }
  return io::code_from_json(j);
}

// Comma-separated packed element codes; "?" marks an erasure.
std::vector<std::optional<galois::Elem>> parse_word(const std::string& text) {
  std::vector<std::optional<galois::Elem>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok == "?") {
      out.emplace_back(std::nullopt);
      continue;
    }
    galois::Elem x = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorKind::FormatError, "bad symbol \"" + tok + "\"");
    }
    out.emplace_back(x);
  }
  return out;
}

std::string csv_sweep(const std::vector<bounds::CurveRow>& rows) {
  std::string s = "delta,bound_id,value\n";
  for (const auto& row : rows) {
    s += format_roundtrip(row.delta);
    s += ',';
    s += bounds::to_string(row.id);
    s += ',';
    s += row.in_domain() ? format_roundtrip(row.value) : std::string("nan");
    s += '\n';
  }
  return s;
}

}  // namespace

std::string format_roundtrip(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_display(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally repairable codes from function-field towers: bounds, places, codes"};
  app.name("lrc");
  app.require_subcommand(1);

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Asymptotic rate bounds")->require_subcommand(1);

  std::string b_bound = "main", b_q;
  std::int64_t b_r = 1;
  double b_delta = 0.5;
  bool b_raw = false;
  auto* eval = bounds_cmd->add_subcommand("eval", "Evaluate one bound");
  eval->add_option("--bound", b_bound, "Bound id")->capture_default_str();
  eval->add_option("--q", b_q, "Alphabet size (e.g. 729 or 3^6)")->required();
  eval->add_option("--r", b_r, "Locality")->required();
  eval->add_option("--delta", b_delta, "Relative distance")->required();
  eval->add_flag("--raw", b_raw, "Print negative values unclamped");

  std::string l_q;
  double l_delta = 0.5;
  std::int64_t l_max_r = 0;
  bool l_reference = false;
  auto* lists = bounds_cmd->add_subcommand("lists", "Admissible localities where main beats GV");
  lists->add_option("--q", l_q, "Square prime power");
  lists->add_option("--delta", l_delta, "Relative distance")->capture_default_str();
  lists->add_option("--max-r", l_max_r, "Only consider r <= max-r");
  lists->add_flag("--published-lists,--paper-lists", l_reference, "Run the eight published (q, 0.5) configurations");

  std::string s_bounds = "main,gv", s_q, s_out;
  std::int64_t s_r = 1;
  double s_min = 0.0, s_max = 0.5;
  std::size_t s_steps = 51;
  auto* sweep_cmd = bounds_cmd->add_subcommand("sweep", "Bound curves over a delta grid as CSV");
  sweep_cmd->add_option("--bounds", s_bounds, "Comma-separated bound ids")->capture_default_str();
  sweep_cmd->add_option("--q", s_q, "Alphabet size")->required();
  sweep_cmd->add_option("--r", s_r, "Locality")->required();
  sweep_cmd->add_option("--delta-min", s_min)->capture_default_str();
  sweep_cmd->add_option("--delta-max", s_max)->capture_default_str();
  sweep_cmd->add_option("--steps", s_steps, "Grid points, endpoints included")->capture_default_str()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", s_out, "Output file (stdout when absent)");

  // tower
  auto* tower_cmd = app.add_subcommand("tower", "Rational places and automorphism orbits")->require_subcommand(1);
  std::string t_q, t_out;
  std::uint32_t t_m = 1, t_u = 1, t_v = 0;
  std::uint64_t t_r = 1;
  std::int64_t t_s = 0;
  auto* places_cmd = tower_cmd->add_subcommand("places", "Rational places at level m as JSON");
  places_cmd->add_option("--q", t_q)->required();
  places_cmd->add_option("--m", t_m)->capture_default_str();
  places_cmd->add_option("--out", t_out);
  auto* orbits_cmd = tower_cmd->add_subcommand("orbits", "Orbit partition of the places as JSON index lists");
  orbits_cmd->add_option("--q", t_q)->required();
  orbits_cmd->add_option("--m", t_m)->capture_default_str();
  orbits_cmd->add_option("--u", t_u)->required();
  orbits_cmd->add_option("--v", t_v)->required();
  orbits_cmd->add_option("--out", t_out);
  auto* adm_cmd = tower_cmd->add_subcommand("admissible", "Admissible (u, v, r)");
  adm_cmd->add_option("--q", t_q)->required();
  auto* params_cmd = tower_cmd->add_subcommand("params", "Code parameters at level m");
  params_cmd->add_option("--q", t_q)->required();
  params_cmd->add_option("--m", t_m)->capture_default_str();
  params_cmd->add_option("--r", t_r)->required();
  params_cmd->add_option("--s", t_s)->required();

  // code
  auto* code_cmd = app.add_subcommand("code", "Build, verify and repair codes")->require_subcommand(1);
  std::string c_q, c_out, c_file, c_word, c_message;
  std::uint32_t c_u = 1, c_v = 0;
  std::int64_t c_s = 0;
  std::uint64_t c_r = 1;
  bool c_distance = false, c_locality = false;
  std::uint64_t c_distance_limit = codes::kDistanceLimit, c_locality_limit = codes::kLocalityLimit;
  auto* build_cmd = code_cmd->add_subcommand("build", "Rational-place code from (u, v, s)");
  build_cmd->add_option("--q", c_q)->required();
  build_cmd->add_option("--u", c_u)->required();
  build_cmd->add_option("--v", c_v)->required();
  build_cmd->add_option("--s", c_s)->required();
  build_cmd->add_option("--out", c_out);
  auto* naive_cmd = code_cmd->add_subcommand("naive", "Append disjoint all-ones parity checks to a code");
  naive_cmd->add_option("file", c_file, "Parent code JSON")->required();
  naive_cmd->add_option("--r", c_r)->required();
  naive_cmd->add_option("--out", c_out);
  auto* verify_cmd = code_cmd->add_subcommand("verify", "Check a code file");
  verify_cmd->add_option("file", c_file)->required();
  verify_cmd->add_flag("--distance", c_distance, "Exact minimum distance");
  verify_cmd->add_flag("--locality", c_locality, "Locality checks");
  verify_cmd->add_option("--distance-limit", c_distance_limit)->capture_default_str();
  verify_cmd->add_option("--locality-limit", c_locality_limit)->capture_default_str();
  auto* encode_cmd = code_cmd->add_subcommand("encode", "Encode a message of packed element codes");
  encode_cmd->add_option("file", c_file)->required();
  encode_cmd->add_option("--message", c_message, "Comma-separated, length k")->required();
  auto* repair_cmd = code_cmd->add_subcommand("repair", "Recover the erased symbol (\"?\") of a word");
  repair_cmd->add_option("file", c_file)->required();
  repair_cmd->add_option("--word", c_word, "Comma-separated packed codes with one ?")->required();

  // appendix
  auto* appendix_cmd = app.add_subcommand("appendix", "GV objective internals")->require_subcommand(1);
  std::string a_q;
  std::int64_t a_r = 1;
  double a_delta = 0.5;
  auto* s0_cmd = appendix_cmd->add_subcommand("s0", "Critical point of the GV objective");
  s0_cmd->add_option("--q", a_q)->required();
  s0_cmd->add_option("--r", a_r)->required();
  s0_cmd->add_option("--delta", a_delta)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*eval) {
      const double q = parse_real_q(b_q);
      const double v = bounds::evaluate({bounds::parse_bound_id(b_bound), q, b_r, b_delta});
      out << b_bound << ' ' << format_display(b_raw ? v : std::max(v, 0.0)) << '\n';
    } else if (*lists) {
      auto run_one = [&](std::uint64_t q, double delta) {
        auto candidates = admissible_localities(q);
        if (l_max_r > 0) std::erase_if(candidates, [&](std::int64_t r) { return r > l_max_r; });
        return bounds::beats_gv_localities(q, delta, candidates);
      };
      if (l_reference) {
        for (const auto& ref : reference_lists()) {
          const auto all = run_one(ref.q, 0.5);
          std::vector<std::int64_t> capped;
          for (auto r : all) {
            if (r <= ref.r.back()) capped.push_back(r);
          }
          out << "q=" << ref.q << " delta=0.5 r: " << join(all) << '\n';
          out << "  published: " << join(ref.r) << (capped == ref.r ? "  (matches for r <= " : "  (differs for r <= ")
              << ref.r.back() << ")\n";
        }
      } else {
        if (l_q.empty()) throw CLI::RequiredError("--q");
        const auto found = run_one(parse_int_q(l_q), l_delta);
        out << "r: " << join(found) << '\n';
      }
    } else if (*sweep_cmd) {
      std::vector<bounds::BoundId> ids;
      std::stringstream ss(s_bounds);
      std::string tok;
      while (std::getline(ss, tok, ',')) ids.push_back(bounds::parse_bound_id(tok));
      std::vector<double> grid(s_steps);
      for (std::size_t i = 0; i < s_steps; ++i) {
        grid[i] = s_steps == 1 ? s_min : s_min + (s_max - s_min) * static_cast<double>(i) / static_cast<double>(s_steps - 1);
      }
      emit(out, s_out, csv_sweep(bounds::sweep(ids, parse_real_q(s_q), s_r, grid)));
    } else if (*places_cmd) {
      const auto f = field_of_size(t_q);
      const auto places = tower::enumerate_places(*f, t_m);
      emit(out, t_out, io::canonical(io::places_to_json(*f, places)) + "\n");
    } else if (*orbits_cmd) {
      const auto f = field_of_size(t_q);
      const auto places = tower::enumerate_places(*f, t_m);
      const auto group = tower::build_subgroup(*f, t_u, t_v);
      emit(out, t_out, io::canonical(io::orbits_to_json(tower::orbit_partition(*f, group, places))) + "\n");
    } else if (*adm_cmd) {
      const auto f = field_of_size(t_q);
      out << "u v r\n";
      for (const auto& a : tower::admissible_params(*f)) out << a.u << ' ' << a.v << ' ' << a.r << '\n';
    } else if (*params_cmd) {
      const auto f = field_of_size(t_q);
      const auto p = tower::family_params(*f, t_m, t_r, t_s);
      out << "n=" << p.n << " genus=" << p.genus << " k>=" << p.k_lower << " d>=" << p.d_lower << '\n';
    } else if (*build_cmd) {
      const auto code = codes::build_rational_lrc(field_of_size(c_q), c_u, c_v, c_s);
      emit(out, c_out, io::canonical(io::code_to_json(code)) + "\n");
    } else if (*naive_cmd) {
      const auto code = codes::naive_lrc(load_code(c_file), c_r);
      emit(out, c_out, io::canonical(io::code_to_json(code)) + "\n");
    } else if (*verify_cmd) {
      const auto code = load_code(c_file);
      bool ok = true;
      out << "n=" << code.n << " k=" << code.k << " r=" << code.r << " construction=" << codes::to_string(code.meta.construction)
          << '\n';
      if (code.r > 0) {
        const bool rate_ok = code.k * (code.r + 1) <= code.n * code.r;
        out << "rate k/n=" << code.k << '/' << code.n << " <= r/(r+1): " << (rate_ok ? "pass" : "FAIL") << '\n';
        ok = ok && rate_ok;
      }
      if (c_distance) {
        std::int64_t d = 0;
        std::string how = "codewords";
        if (codes::codeword_count(code) <= c_distance_limit) {
          d = codes::min_distance(code, c_distance_limit);
        } else {
          d = codes::min_distance_by_supports(code);
          how = "column-ranks";
        }
        out << "d=" << d << " (" << how << ")";
        if (code.meta.d_lower) {
          const bool pass = d >= *code.meta.d_lower;
          out << " d_lower=" << *code.meta.d_lower << ' ' << (pass ? "pass" : "FAIL");
          ok = ok && pass;
        }
        if (code.r > 0) {
          const auto cap = bounds::singleton_finite(static_cast<std::int64_t>(code.n), static_cast<std::int64_t>(code.k),
                                                    static_cast<std::int64_t>(code.r));
          const bool pass = d <= cap;
          out << " singleton=" << cap << ' ' << (pass ? "pass" : "FAIL");
          ok = ok && pass;
        }
        out << '\n';
      }
      if (c_locality) {
        const auto rep = codes::verify_locality(code, c_locality_limit);
        out << "locality=" << code.r << " algebraic=" << (rep.algebraic_pass() ? "pass" : "FAIL") << " exhaustive="
            << (rep.method == codes::ExhaustiveMethod::skipped ? "skipped" : rep.exhaustive_pass() ? "pass" : "FAIL")
            << " method=" << codes::to_string(rep.method) << '\n';
        for (const auto& c : rep.coords) {
          if (!c.algebraic || (c.exhaustive && !*c.exhaustive)) out << "  coordinate " << c.index << " FAIL\n";
        }
        ok = ok && rep.passed();
      }
      out << (ok ? "all-pass" : "FAIL") << '\n';
      if (!ok) return kExitDomain;
    } else if (*encode_cmd) {
      const auto code = load_code(c_file);
      std::vector<galois::Elem> msg;
      for (const auto& x : parse_word(c_message)) {
        if (!x) throw Error(ErrorKind::FormatError, "message cannot contain erasures");
        msg.push_back(*x);
      }
      const auto c = codes::encode(code, msg);
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
      out << '\n';
    } else if (*repair_cmd) {
      const auto code = load_code(c_file);
      const auto word = parse_word(c_word);
      std::vector<std::size_t> erased;
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (!word[i]) erased.push_back(i);
      }
      if (erased.size() != 1) throw Error(ErrorKind::NotRepairable, "expected exactly one erased symbol");
      const auto x = codes::local_repair(code, word, erased.front());
      out << "position " << erased.front() << ": " << x << '\n';
    } else if (*s0_cmd) {
      const double q = parse_real_q(a_q);
      const double s0 = bounds::find_s0(q, a_r, a_delta);
      const double lo = 1.0 / (q - 1.0);
      const double hi = lo + std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(a_r, 1074)));
      out << "s0=" << format_display(s0) << '\n';
      out << "interval=(" << format_display(lo) << ", " << format_display(hi) << ") inside="
          << (s0 > lo && s0 < hi ? "yes" : "no") << '\n';
      out << "gv=" << format_display(bounds::gv_bound(q, a_r, a_delta)) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitDomain;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace lrc::cli
