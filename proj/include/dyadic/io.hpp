#ifndef DYADIC_IO_HPP
#define DYADIC_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dyadic/checks.hpp"
#include "dyadic/construction.hpp"
#include "dyadic/kernel.hpp"
#include "dyadic/space.hpp"
#include "dyadic/subbase.hpp"
#include "dyadic/symbolic_set.hpp"

namespace dyadic {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw input_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Rational rational_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw input_error(std::string("field '") + key + "' must be a rational string");
}

inline const SequencePrimitive* find_sequence(const SpaceDescription& space, const Rational& limit,
                                              const Rational& offset, std::size_t* index) {
  for (std::size_t s = 0; s < space.sequences().size(); ++s) {
    const auto& seq = space.sequences()[s];
    if (seq.limit == limit && seq.offset == offset) {
      *index = s;
      return &seq;
    }
  }
  return nullptr;
}

}  // namespace detail

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw input_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Spaces

inline Json to_json(const Primitive& p) {
  return std::visit(
      [](const auto& q) -> Json {
        using T = std::decay_t<decltype(q)>;
        Json j;
        if constexpr (std::is_same_v<T, IntervalPrimitive>) {
          j["kind"] = "interval";
          j["lo"] = q.lo.str();
          j["hi"] = q.hi.str();
        } else if constexpr (std::is_same_v<T, PointPrimitive>) {
          j["kind"] = "point";
          j["at"] = q.at.str();
        } else {
          j["kind"] = "sequence";
          j["limit"] = q.limit.str();
          j["offset"] = q.offset.str();
          j["open_limit"] = q.open_limit;
        }
        return j;
      },
      p);
}

inline Json to_json(const SpaceDescription& space) {
  Json prims = Json::array();
  for (const auto& p : space.primitives()) prims.push_back(to_json(p));
  return Json{{"primitives", prims}};
}

inline SpacePtr space_from_json(const Json& j) {
  const Json& prims = detail::field(j, "primitives");
  if (!prims.is_array()) throw input_error("'primitives' must be an array");
  std::vector<Primitive> out;
  for (const auto& p : prims) {
    std::string kind = detail::field(p, "kind").get<std::string>();
    if (kind == "interval") {
      out.emplace_back(IntervalPrimitive{detail::rational_field(p, "lo"), detail::rational_field(p, "hi")});
    } else if (kind == "point") {
      out.emplace_back(PointPrimitive{detail::rational_field(p, "at")});
    } else if (kind == "sequence") {
      bool open_limit = p.contains("open_limit") && p.at("open_limit").get<bool>();
      out.emplace_back(
          SequencePrimitive{detail::rational_field(p, "limit"), detail::rational_field(p, "offset"), open_limit});
    } else {
      throw input_error("unknown primitive kind '" + kind + "'");
    }
  }
  return SpaceDescription::make(out);
}

inline SpacePtr load_space(const std::string& path) { return space_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Sets

/// {"intervals": [...], "points": [...], "tails": [...]}; a tail names its
/// sequence by limit and offset, "from" is K for a set containing every
/// k >= K (null for finite sets) and "indices" lists the members below K.
inline Json to_json(const SymbolicSet& a) {
  const SpaceDescription& space = *a.space();
  Json intervals = Json::array();
  for (const auto& t : a.traces()) {
    for (const auto& p : t.pieces()) intervals.push_back(p.str());
  }
  Json points = Json::array();
  for (std::size_t i = 0; i < a.points().size(); ++i) {
    if (a.points()[i]) points.push_back(space.points()[i].at.str());
  }
  Json tails = Json::array();
  for (std::size_t s = 0; s < a.tails().size(); ++s) {
    const IndexSet& idx = a.tails()[s];
    if (idx.is_empty()) continue;
    Json t;
    t["limit"] = space.sequences()[s].limit.str();
    t["offset"] = space.sequences()[s].offset.str();
    t["from"] = idx.is_infinite() ? Json(idx.threshold()) : Json(nullptr);
    t["indices"] = idx.members_below_threshold();
    tails.push_back(t);
  }
  return Json{{"intervals", intervals}, {"points", points}, {"tails", tails}};
}

inline SymbolicSet set_from_json(const SpacePtr& space, const Json& j) {
  if (!j.is_object()) throw input_error("a set must be a JSON object");
  SymbolicSet out = SymbolicSet::empty(space);
  if (j.contains("intervals")) {
    for (const auto& p : j.at("intervals")) {
      out = unite(out, SymbolicSet::from_piece(space, Piece::parse(p.get<std::string>())));
    }
  }
  if (j.contains("points")) {
    for (const auto& p : j.at("points")) {
      Rational x = Rational::parse(p.get<std::string>());
      if (!space->contains(x)) throw input_error("point " + x.str() + " is not in the space");
      out = unite(out, SymbolicSet::singleton(space, x));
    }
  }
  if (j.contains("tails")) {
    for (const auto& t : j.at("tails")) {
      Rational limit = detail::rational_field(t, "limit");
      Rational offset = detail::rational_field(t, "offset");
      std::size_t s = 0;
      if (!detail::find_sequence(*space, limit, offset, &s)) {
        throw input_error("no sequence with limit " + limit.str() + " and offset " + offset.str());
      }
      IndexSet idx = IndexSet::none();
      if (t.contains("from") && !t.at("from").is_null()) {
        idx = IndexSet::from(t.at("from").get<IndexSet::index_type>());
      }
      std::set<IndexSet::index_type> listed;
      if (t.contains("indices")) {
        for (const auto& k : t.at("indices")) listed.insert(k.get<IndexSet::index_type>());
      }
      out = unite(out, SymbolicSet::sequence_members(space, s, unite(idx, IndexSet::finite(listed))));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subbases

struct LoadedSubbase {
  DyadicSubbase subbase;
  std::optional<std::size_t> kernel_levels;
};

inline Json to_json(const DyadicSubbase& subbase, std::optional<std::size_t> kernel_levels = std::nullopt) {
  Json pairs = Json::array();
  for (const auto& p : subbase.pairs()) pairs.push_back(Json{{"s0", to_json(p.zero)}, {"s1", to_json(p.one)}});
  Json j{{"space", to_json(*subbase.space())}};
  if (kernel_levels) j["kernel_levels"] = *kernel_levels;
  j["pairs"] = pairs;
  return j;
}

/// Reads a subbase document, or the "subbase" member of a build output. A
/// pair without "s1" gets the exterior of "s0"; explicit pairs are taken as
/// written so that broken fixtures can be checked.
inline LoadedSubbase subbase_from_json(const Json& doc) {
  const Json& j = doc.contains("subbase") ? doc.at("subbase") : doc;
  SpacePtr space = space_from_json(detail::field(j, "space"));
  LoadedSubbase out{DyadicSubbase(space), std::nullopt};
  if (j.contains("kernel_levels")) out.kernel_levels = j.at("kernel_levels").get<std::size_t>();
  for (const auto& p : detail::field(j, "pairs")) {
    SymbolicSet zero = set_from_json(space, detail::field(p, "s0"));
    if (p.contains("s1")) {
      out.subbase.push_unchecked({zero, set_from_json(space, p.at("s1"))});
    } else {
      out.subbase.push(zero);
    }
  }
  return out;
}

inline LoadedSubbase load_subbase(const std::string& path) { return subbase_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const CheckReport& r) {
  Json j;
  j["property"] = property_name(r.property);
  j["depth"] = r.depth;
  j["passed"] = r.passed;
  if (r.property == Property::proper || r.property == Property::independent) j["words_checked"] = r.words_checked;
  j["counterexamples_found"] = r.counterexamples_found;
  Json ces = Json::array();
  for (const auto& c : r.counterexamples) {
    Json e;
    e["word"] = c.word ? Json(c.word->render(r.depth, false)) : Json(nullptr);
    e["point"] = c.point ? Json(c.point->str()) : Json(nullptr);
    e["index"] = c.index ? Json(*c.index) : Json(nullptr);
    e["detail"] = c.detail;
    ces.push_back(e);
  }
  j["counterexamples"] = ces;
  if (r.degree_sup) j["degree_sup"] = *r.degree_sup;
  if (r.property == Property::degree) {
    j["expected_degree"] = r.expected_degree ? Json(*r.expected_degree) : Json(nullptr);
  }
  if (r.boundaries_disjoint) j["boundaries_disjoint"] = *r.boundaries_disjoint;
  if (!r.probe_degrees.empty()) {
    Json probes = Json::array();
    for (const auto& p : r.probe_degrees) probes.push_back(Json{{"point", p.point.str()}, {"degree", p.degree}});
    j["probe_degrees"] = probes;
  }
  if (r.epsilon) j["epsilon"] = r.epsilon->str();
  if (r.property == Property::resolution) j["probes_checked"] = r.probes_checked;
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

inline Json to_json(const ReportBundle& b) {
  Json j = Json::array();
  j.push_back(to_json(b.dyadic));
  j.push_back(to_json(b.proper));
  if (b.independent) j.push_back(to_json(*b.independent));
  j.push_back(to_json(b.degree));
  j.push_back(to_json(b.resolution));
  return j;
}

inline Json to_json(const KernelReport& r) {
  Json scattered = Json::array();
  for (const auto& e : r.scattered) {
    Json s = to_json(e.primitive);
    s["step"] = e.step;
    scattered.push_back(s);
  }
  return Json{{"kernel", to_json(*r.kernel)}, {"scattered", scattered}, {"rank", r.rank}};
}

inline Json to_json(const StepTrace& t) {
  auto words = [&](const std::vector<TernaryWord>& ws) {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back(w.render(t.level));
    return a;
  };
  auto sets = [](const std::map<std::string, SymbolicSet>& m) {
    Json o = Json::object();
    for (const auto& [k, v] : m) o[k] = to_json(v);
    return o;
  };
  Json j;
  j["level"] = t.level;
  j["U0"] = to_json(t.u0);
  j["U1"] = to_json(t.u1);
  j["U1_star"] = to_json(t.u1_star);
  j["V"] = to_json(t.v);
  j["V_star"] = t.v_star ? to_json(*t.v_star) : Json(nullptr);
  j["A"] = words(t.a_words);
  j["B"] = words(t.b_words);
  j["G"] = sets(t.g);
  j["G_star"] = sets(t.g_star);
  j["S0"] = to_json(t.pair.zero);
  j["S1"] = to_json(t.pair.one);
  j["S0_star"] = t.lifted ? to_json(t.lifted->zero) : Json(nullptr);
  j["S1_star"] = t.lifted ? to_json(t.lifted->one) : Json(nullptr);
  j["validated"] = t.validated;
  return j;
}

inline Json to_json(const BuildResult& r, bool with_trace) {
  Json j;
  j["subbase"] = to_json(r.subbase, r.kernel_levels);
  j["kernel"] = to_json(r.kernel);
  j["reports"] = to_json(r.reports);
  if (with_trace) {
    Json traces = Json::array();
    for (const auto& t : r.traces) traces.push_back(to_json(t));
    j["trace"] = traces;
  }
  return j;
}

}  // namespace dyadic

#endif  // DYADIC_IO_HPP
