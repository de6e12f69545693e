#include "wpb/spec_io.hpp"

#include "wpb/semantics.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace wpb {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& path, const std::string& message) {
  throw InputError(code, path + ": " + message);
}

// Re-labels an InputError raised deeper down with the JSON path it came from.
template <typename Fn>
auto at(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InputError& e) {
    throw InputError(e.code(), path + ": " + e.what());
  }
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing-field", path, std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail("expected-string", path, "expected a string");
  return j.get<std::string>();
}

Rational as_rational(const Json& j, const std::string& path) {
  if (!j.is_string()) fail("expected-rational-string", path, "rationals are written as strings \"p/q\"");
  return at(path, [&] { return parse_rational(j.get<std::string>()); });
}

RationalVector as_vector(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) fail("expected-array", path, "expected an array of rationals");
  if (j.size() != n)
    fail("wrong-length", path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  RationalVector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    v[static_cast<Eigen::Index>(i)] = as_rational(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

const FinSet& set_named(const SpecDocument& doc, const Json& j, const std::string& path) {
  const std::string name = as_string(j, path);
  auto it = doc.sets.find(name);
  if (it == doc.sets.end()) fail("unknown-set", path, "no set named '" + name + "'");
  return it->second;
}

Mask label_mask(const Json& j, const FinSet& y, const std::string& path, bool* bottom) {
  if (!j.is_array()) fail("expected-array", path, "expected an array of element labels");
  Mask m = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const std::string label = as_string(j[i], p);
    if (bottom && (label == kBottomLabel || label == "bottom")) {
      *bottom = true;
      continue;
    }
    m |= bit(at(p, [&] { return y.index_of(label); }));
  }
  return m;
}

RationalVector weight_object(const Json& j, const FinSet& y, const std::string& path) {
  if (!j.is_object()) fail("expected-object", path, "expected an object mapping labels to probabilities");
  RationalVector w = RationalVector::Zero(static_cast<Eigen::Index>(y.size()));
  for (const auto& [label, value] : j.items()) {
    const std::string p = path + "." + label;
    w[static_cast<Eigen::Index>(at(p, [&] { return y.index_of(label); }))] = as_rational(value, p);
  }
  return w;
}

Row parse_row(MonadKind kind, const Json& j, const FinSet& y, const std::string& path) {
  switch (kind) {
    case MonadKind::Powerset: return Subset{label_mask(j, y, path, nullptr)};
    case MonadKind::NonemptyPowersetLift: {
      bool bottom = false;
      Mask m = label_mask(j, y, path, &bottom);
      return LiftedSubset{m, bottom};
    }
    case MonadKind::SubDist:
    case MonadKind::Dist: return Weights{weight_object(j, y, path)};
    case MonadKind::UpPowerset: {
      if (!j.is_array()) fail("expected-array", path, "expected an array of generating subsets");
      std::vector<Mask> gens;
      for (std::size_t i = 0; i < j.size(); ++i)
        gens.push_back(label_mask(j[i], y, path + "[" + std::to_string(i) + "]", nullptr));
      return up_closure(gens, y.size());
    }
    case MonadKind::CvDist: {
      if (!j.is_array()) fail("expected-array", path, "expected an array of vertex distributions");
      DistributionPolytope p;
      for (std::size_t i = 0; i < j.size(); ++i)
        p.vertices.push_back(weight_object(j[i], y, path + "[" + std::to_string(i) + "]"));
      return p;
    }
  }
  throw std::logic_error("unreachable");
}

KleisliArrow parse_computation(const SpecDocument& doc, const Json& j) {
  const std::string path = "computation";
  if (!j.is_object()) fail("expected-object", path, "expected an object");
  const MonadKind kind =
      at(path + ".monad", [&] { return parse_monad(as_string(field(j, "monad", path), path + ".monad")); });
  const FinSet& x = set_named(doc, field(j, "source", path), path + ".source");
  const FinSet& y = set_named(doc, field(j, "target", path), path + ".target");
  const Json& rows_json = field(j, "rows", path);
  if (!rows_json.is_object()) fail("expected-object", path + ".rows", "expected an object keyed by source elements");
  for (const auto& [label, value] : rows_json.items()) {
    if (!x.contains(label)) fail("unknown-element", path + ".rows", "'" + label + "' is not an element of " + x.name());
  }
  std::vector<Row> rows;
  for (const auto& label : x.elements()) {
    const std::string p = path + ".rows." + label;
    auto it = rows_json.find(label);
    if (it == rows_json.end()) fail("missing-row", p, "no row for source element '" + label + "'");
    Row r = parse_row(kind, *it, y, p);
    at(p, [&] {
      validate_row(kind, r, y.size());
      return 0;
    });
    rows.push_back(std::move(r));
  }
  return at(path, [&] { return KleisliArrow(kind, x, y, std::move(rows)); });
}

ProbeGrid parse_probes(const Json& j, std::size_t n) {
  const std::string path = "probes";
  if (!j.is_object()) fail("expected-object", path, "expected an object");
  std::vector<RationalVector> preds;
  const Json& pj = field(j, "predicates", path);
  if (!pj.is_array()) fail("expected-array", path + ".predicates", "expected an array of predicates");
  for (std::size_t i = 0; i < pj.size(); ++i)
    preds.push_back(as_vector(pj[i], n, path + ".predicates[" + std::to_string(i) + "]"));
  std::vector<Rational> scalars = default_scalars();
  if (auto it = j.find("scalars"); it != j.end()) {
    if (!it->is_array()) fail("expected-array", path + ".scalars", "expected an array of rationals");
    scalars.clear();
    for (std::size_t i = 0; i < it->size(); ++i)
      scalars.push_back(as_rational((*it)[i], path + ".scalars[" + std::to_string(i) + "]"));
  }
  return at(path, [&] { return ProbeGrid::custom(std::move(preds), std::move(scalars)); });
}

PredicateTransformer parse_transformer(const SpecDocument& doc, const Json& j) {
  const std::string path = "transformer";
  if (!j.is_object()) fail("expected-object", path, "expected an object");
  const std::string kind = as_string(field(j, "kind", path), path + ".kind");
  const FinSet& y = set_named(doc, field(j, "source", path), path + ".source");
  const FinSet& x = set_named(doc, field(j, "target", path), path + ".target");

  if (kind == "truth_table") {
    if (y.size() > 24) fail("size-guard", path, "truth tables over more than 24 source elements are not supported");
    const Json& tj = field(j, "table", path);
    if (!tj.is_object()) fail("expected-object", path + ".table", "expected an object keyed by predicate bitstrings");
    const std::size_t rows = std::size_t{1} << y.size();
    std::vector<Mask> table(rows);
    std::vector<bool> seen(rows, false);
    for (const auto& [key, value] : tj.items()) {
      const std::string p = path + ".table." + key;
      const Mask g = at(p, [&] { return parse_bitstring(key, y.size()); });
      if (seen[g]) fail("duplicate-entry", p, "predicate listed twice");
      seen[g] = true;
      table[g] = at(p, [&] { return parse_bitstring(as_string(value, p), x.size()); });
    }
    for (Mask g = 0; g < rows; ++g)
      if (!seen[g]) fail("incomplete-table", path + ".table", "no entry for predicate " + bitstring(g, y.size()));
    return BoolTransformer{y, x, std::move(table)};
  }

  if (kind == "probe_table") {
    const Json& ej = field(j, "entries", path);
    if (!ej.is_array()) fail("expected-array", path + ".entries", "expected an array of {predicate, value} pairs");
    auto table = std::make_shared<std::map<std::string, RationalVector>>();
    for (std::size_t i = 0; i < ej.size(); ++i) {
      const std::string p = path + ".entries[" + std::to_string(i) + "]";
      RationalVector pred = as_vector(field(ej[i], "predicate", p), y.size(), p + ".predicate");
      if (!in_unit_cube(pred)) fail("probe-out-of-range", p + ".predicate", "predicate outside [0,1]");
      RationalVector value = as_vector(field(ej[i], "value", p), x.size(), p + ".value");
      if (!table->emplace(to_string(pred), std::move(value)).second)
        fail("duplicate-entry", p, "predicate listed twice");
    }
    // Probes outside the table fall back to the defining computation.
    std::optional<RationalTransformer> fallback;
    if (doc.computation && doc.modality) {
      const Modality tau = builtin_modality(*doc.modality);
      if (tau.carrier == TruthCarrier::RationalUnit && doc.computation->monad() == tau.monad &&
          doc.computation->source() == x && doc.computation->target() == y) {
        fallback = std::get<RationalTransformer>(pt_modality(*doc.computation, tau));
      }
    }
    RationalEval eval = [table, fallback](const RationalVector& p) -> RationalVector {
      auto it = table->find(to_string(p));
      if (it != table->end()) return it->second;
      if (fallback) return (*fallback)(p);
      throw InputError("probe-missing", "probe table has no entry for " + to_string(p));
    };
    std::shared_ptr<const KleisliArrow> defining;
    if (fallback) defining = std::make_shared<const KleisliArrow>(*doc.computation);
    return RationalTransformer{y, x, std::move(eval), defining, "probe table"};
  }
  fail("unknown-transformer-kind", path + ".kind", "expected 'truth_table' or 'probe_table', got '" + kind + "'");
}

Json labels_of(const FinSet& s) { return Json(s.elements()); }

Json mask_labels(Mask m, const FinSet& y) {
  Json a = Json::array();
  for (std::size_t i : members(m)) a.push_back(y.label(i));
  return a;
}

Json weights_json(const RationalVector& w, const FinSet& y) {
  Json o = Json::object();
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] != 0) o[y.label(static_cast<std::size_t>(i))] = to_string(w[i]);
  return o;
}

Json row_json(const Row& r, const FinSet& y) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Subset>) {
          return mask_labels(v.elements, y);
        } else if constexpr (std::is_same_v<T, LiftedSubset>) {
          Json a = mask_labels(v.elements, y);
          if (v.bottom) a.push_back(std::string(kBottomLabel));
          return a;
        } else if constexpr (std::is_same_v<T, Weights>) {
          return weights_json(v.mass, y);
        } else if constexpr (std::is_same_v<T, UpFamily>) {
          // minimal members generate the family
          Json a = Json::array();
          for (Mask m : v.members) {
            bool minimal = true;
            for (Mask k : v.members)
              if (k != m && (k & m) == k) minimal = false;
            if (minimal) a.push_back(mask_labels(m, y));
          }
          return a;
        } else {
          Json a = Json::array();
          for (const auto& w : v.vertices) a.push_back(weights_json(w, y));
          return a;
        }
      },
      r);
}

Json sets_json(std::initializer_list<const FinSet*> sets) {
  Json o = Json::object();
  for (const FinSet* s : sets)
    if (!o.contains(s->name())) o[s->name()] = labels_of(*s);
  return o;
}

Json computation_json(const KleisliArrow& f) {
  Json c = Json::object();
  c["monad"] = std::string(to_string(f.monad()));
  c["source"] = f.source().name();
  c["target"] = f.target().name();
  Json rows = Json::object();
  for (std::size_t x = 0; x < f.source().size(); ++x) rows[f.source().label(x)] = row_json(f.row(x), f.target());
  c["rows"] = rows;
  return c;
}

Json vector_json(const RationalVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v[i]));
  return a;
}

}  // namespace

SpecDocument parse_spec(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError("malformed-json", std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) throw InputError("not-an-object", "document: expected a JSON object");
  static const char* known[] = {"sets", "computation", "modality", "transformer", "probes", "seed"};
  for (const auto& [key, value] : root.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      fail("unknown-field", "document", "unknown top-level field '" + key + "'");
  }

  SpecDocument doc;
  const Json& sets = field(root, "sets", "document");
  if (!sets.is_object()) fail("expected-object", "sets", "expected an object of named element lists");
  for (const auto& [name, elems] : sets.items()) {
    const std::string p = "sets." + name;
    if (!elems.is_array()) fail("expected-array", p, "expected an array of element labels");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < elems.size(); ++i)
      labels.push_back(as_string(elems[i], p + "[" + std::to_string(i) + "]"));
    doc.sets.emplace(name, at(p, [&] { return FinSet(name, labels); }));
  }
  if (auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned()) fail("expected-integer", "seed", "expected a non-negative integer");
    doc.seed = it->get<std::uint64_t>();
  }
  if (auto it = root.find("computation"); it != root.end()) doc.computation = parse_computation(doc, *it);
  if (auto it = root.find("modality"); it != root.end()) {
    doc.modality = as_string(*it, "modality");
    at("modality", [&] { return builtin_modality(*doc.modality); });
  }
  if (auto it = root.find("transformer"); it != root.end()) doc.transformer = parse_transformer(doc, *it);
  if (auto it = root.find("probes"); it != root.end()) {
    std::size_t n = 0;
    if (doc.transformer) n = std::visit([](const auto& t) { return t.source.size(); }, *doc.transformer);
    else if (doc.computation) n = doc.computation->target().size();
    else fail("missing-field", "probes", "probes need a transformer or computation fixing the predicate length");
    doc.probes = parse_probes(*it, n);
  }
  return doc;
}

SpecDocument load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("unreadable-file", "cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string emit_computation(const KleisliArrow& f, const std::optional<std::string>& modality) {
  Json doc = Json::object();
  doc["sets"] = sets_json({&f.source(), &f.target()});
  doc["computation"] = computation_json(f);
  if (modality) doc["modality"] = *modality;
  return doc.dump(2) + "\n";
}

std::string emit_truth_table(const BoolTransformer& phi, const std::optional<KleisliArrow>& defining,
                             const std::optional<std::string>& modality) {
  Json doc = Json::object();
  doc["sets"] = sets_json({&phi.target, &phi.source});
  if (defining) doc["computation"] = computation_json(*defining);
  if (modality) doc["modality"] = *modality;
  Json t = Json::object();
  t["kind"] = "truth_table";
  t["source"] = phi.source.name();
  t["target"] = phi.target.name();
  Json table = Json::object();
  for (Mask g = 0; g < phi.table.size(); ++g)
    table[bitstring(g, phi.source.size())] = bitstring(phi(g), phi.target.size());
  t["table"] = table;
  doc["transformer"] = t;
  return doc.dump(2) + "\n";
}

std::string emit_probe_table(const RationalTransformer& phi, const ProbeGrid& grid,
                             const std::optional<KleisliArrow>& defining, const std::optional<std::string>& modality) {
  Json doc = Json::object();
  doc["sets"] = sets_json({&phi.target, &phi.source});
  if (defining) doc["computation"] = computation_json(*defining);
  if (modality) doc["modality"] = *modality;
  Json t = Json::object();
  t["kind"] = "probe_table";
  t["source"] = phi.source.name();
  t["target"] = phi.target.name();
  Json entries = Json::array();
  Json preds = Json::array();
  for (const auto& p : grid.predicates) {
    Json e = Json::object();
    e["predicate"] = vector_json(p);
    e["value"] = vector_json(phi(p));
    entries.push_back(e);
    preds.push_back(vector_json(p));
  }
  t["entries"] = entries;
  doc["transformer"] = t;
  Json probes = Json::object();
  probes["predicates"] = preds;
  Json scalars = Json::array();
  for (const auto& r : grid.scalars) scalars.push_back(to_string(r));
  probes["scalars"] = scalars;
  doc["probes"] = probes;
  return doc.dump(2) + "\n";
}

}  // namespace wpb
