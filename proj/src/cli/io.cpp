#include "lxkit/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace lxkit::io {

using foundation::PlueckerVector;
using foundation::QMatrix;
using foundation::Rational;
using foundation::Subset;
using matroidcore::Mask;
using matroidcore::Matroid;

namespace {

std::string subset_label(Subset s) { return s.to_string(); }

Subset subset_from_json(const Json& j) {
  if (!j.is_string()) throw InputError("expected a subset string like \"1,2,4\"");
  return Subset::parse(j.get<std::string>());
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_member(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Json to_json(const Rational& r) { return foundation::to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
  if (j.is_string()) return foundation::parse_rational(j.get<std::string>());
  throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw InputError("expected a nonempty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.front().size()) throw InputError("matrix rows must have equal length");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    rows.push_back(std::move(r));
  }
  return QMatrix::from_rows(rows);
}

Json to_json(const PlueckerVector& q) {
  Json out = Json::object();
  for (auto s : foundation::colex_subsets(q.n(), q.k())) out[subset_label(s)] = to_json(q[s]);
  return out;
}

linespace::SubspaceInput subspace_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("subspace input must be a JSON object");
  linespace::SubspaceInput x;
  if (j.contains("basis")) {
    x = linespace::SubspaceInput::from_basis(matrix_from_json(j.at("basis")));
  } else if (j.contains("plucker")) {
    const Json& values = j.at("plucker");
    if (!values.is_object() || values.empty()) throw InputError("\"plucker\" must be a nonempty object");
    int k = -1, n = 0;
    std::vector<std::pair<Subset, Rational>> entries;
    for (const auto& [key, value] : values.items()) {
      const Subset s = Subset::parse(key);
      if (k >= 0 && s.size() != k) throw InputError("Pluecker keys must all have the same size");
      k = s.size();
      if (!s.empty()) n = std::max(n, s.max());
      entries.emplace_back(s, rational_from_json(value));
    }
    if (j.contains("n")) n = int_member(j, "n");
    PlueckerVector q(n, k);
    for (const auto& [s, v] : entries) q[s] = v;
    x = linespace::SubspaceInput::from_plucker(std::move(q));
  } else {
    throw InputError("subspace input needs \"basis\" or \"plucker\"");
  }
  if (j.contains("n") && int_member(j, "n") != x.n) throw DimensionError("\"n\" does not match the data");
  if (j.contains("d") && int_member(j, "d") != x.d) throw DimensionError("\"d\" does not match the data");
  return x;
}

namespace {

Json original_labels(const std::vector<Subset>& frame, const std::vector<int>& permutation) {
  Json out = Json::array();
  for (auto s : frame) out.push_back(subset_label(linespace::to_original(permutation, s)));
  return out;
}

}  // namespace

Json to_json(const linespace::UMatrix& u) {
  Json out = Json::object();
  out["rows"] = original_labels(u.row_labels, u.permutation);
  out["columns"] = original_labels(u.col_labels, u.permutation);
  out["entries"] = to_json(u.entries);
  return out;
}

Json to_json(const linespace::VMatrix& v) {
  Json out = Json::object();
  out["rows"] = v.row_labels;
  out["columns"] = original_labels(v.col_labels, v.permutation);
  out["entries"] = to_json(v.entries);
  return out;
}

Json to_json(const Matroid& m) {
  Json out = Json::object();
  out["ground"] = m.ground();
  out["rank"] = m.rank();
  Json bases = Json::array();
  for (Mask b : m.bases()) bases.push_back(m.labels_of(b));
  out["bases"] = std::move(bases);
  return out;
}

Matroid matroid_from_json(const Json& j) {
  const Json& ground = member(j, "ground");
  const Json& bases = member(j, "bases");
  if (!ground.is_array() || !bases.is_array()) throw InputError("matroid \"ground\" and \"bases\" must be arrays");
  std::vector<std::string> labels;
  for (const auto& g : ground) {
    if (!g.is_string()) throw InputError("matroid labels must be strings");
    labels.push_back(g.get<std::string>());
  }
  std::map<std::string, int> index;
  for (std::size_t k = 0; k < labels.size(); ++k) index[labels[k]] = static_cast<int>(k);
  std::vector<Mask> masks;
  for (const auto& b : bases) {
    if (!b.is_array()) throw InputError("each basis must be an array of labels");
    Mask m = 0;
    for (const auto& l : b) {
      auto it = l.is_string() ? index.find(l.get<std::string>()) : index.end();
      if (it == index.end()) throw InputError("basis uses an unknown label: " + l.dump());
      m |= Mask{1} << it->second;
    }
    masks.push_back(m);
  }
  Matroid out(std::move(labels), std::move(masks));
  if (j.contains("rank") && int_member(j, "rank") != out.rank()) throw InputError("matroid \"rank\" disagrees with its bases");
  return out;
}

Json to_json(const polyrel::SparsePoly& p) {
  Json out = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json vars = Json::array();
    for (const auto& v : mono.vars()) vars.push_back(v.to_string());
    out.push_back(Json{{"coefficient", to_json(c)}, {"monomial", std::move(vars)}});
  }
  return out;
}

polyrel::SparsePoly poly_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("polynomial must be an array of terms");
  polyrel::SparsePoly out;
  for (const auto& t : j) {
    std::vector<polyrel::PQVar> vars;
    const Json& mono = member(t, "monomial");
    if (!mono.is_array()) throw InputError("\"monomial\" must be an array");
    for (const auto& v : mono) {
      if (!v.is_string()) throw InputError("variables must be strings like \"P:1,2\"");
      vars.push_back(polyrel::PQVar::parse(v.get<std::string>()));
    }
    out.add_term(polyrel::Monomial(std::move(vars)), rational_from_json(member(t, "coefficient")));
  }
  return out;
}

Json to_json(const polyrel::SaturationCertificate& c) {
  Json out = Json::object();
  out["A"] = subset_label(c.target_a);
  out["B"] = subset_label(c.target_b);
  out["C"] = subset_label(c.pivot);
  out["exponent"] = c.exponent;
  Json combo = Json::array();
  for (const auto& term : c.combination) {
    Json t = Json::object();
    t["incidence"] = Json{{"A", subset_label(term.incidence.a)}, {"B", subset_label(term.incidence.b)}};
    t["coefficient"] = to_json(term.coefficient);
    combo.push_back(std::move(t));
  }
  out["combination"] = std::move(combo);
  return out;
}

polyrel::SaturationCertificate certificate_from_json(const Json& j) {
  polyrel::SaturationCertificate c;
  c.target_a = subset_from_json(member(j, "A"));
  c.target_b = subset_from_json(member(j, "B"));
  c.pivot = subset_from_json(member(j, "C"));
  const int e = int_member(j, "exponent");
  if (e < 0) throw InputError("certificate exponent must be nonnegative");
  c.exponent = static_cast<unsigned>(e);
  const Json& combo = member(j, "combination");
  if (!combo.is_array()) throw InputError("\"combination\" must be an array");
  for (const auto& t : combo) {
    const Json& inc = member(t, "incidence");
    c.combination.push_back(
        {poly_from_json(member(t, "coefficient")), {subset_from_json(member(inc, "A")), subset_from_json(member(inc, "B"))}});
  }
  return c;
}

Json to_json(const tropfan::TropValue& v) { return v.to_string(); }

tropfan::TropValue trop_from_json(const Json& j) {
  if (j.is_string()) return tropfan::TropValue::parse(j.get<std::string>());
  return tropfan::TropValue(rational_from_json(j));
}

Json to_json(const tropfan::TropPluecker& p) {
  Json values = Json::object();
  for (auto s : foundation::colex_subsets(p.n(), p.m())) values[subset_label(s)] = to_json(p[s]);
  return Json{{"n", p.n()}, {"m", p.m()}, {"values", std::move(values)}};
}

tropfan::TropPluecker trop_pluecker_from_json(const Json& j) {
  const Json& values = member(j, "values");
  if (!values.is_object() || values.empty()) throw InputError("\"values\" must be a nonempty object");
  int m = -1, n = 0;
  std::vector<std::pair<Subset, tropfan::TropValue>> entries;
  for (const auto& [key, value] : values.items()) {
    const Subset s = Subset::parse(key);
    if (m >= 0 && s.size() != m) throw InputError("tropical Pluecker keys must all have the same size");
    m = s.size();
    if (!s.empty()) n = std::max(n, s.max());
    entries.emplace_back(s, trop_from_json(value));
  }
  if (j.contains("n")) n = int_member(j, "n");
  if (j.contains("m") && int_member(j, "m") != m) throw DimensionError("\"m\" does not match the keys");
  tropfan::TropPluecker p(n, m);
  for (const auto& [s, v] : entries) p[s] = v;
  if (p.all_neg_inf()) throw InputError("tropical Pluecker vector is identically -inf");
  return p;
}

Json to_json(const tropfan::FanChart& chart) {
  const Matroid& m = chart.matroid;
  std::map<Mask, std::size_t> ray_index;
  Json rays = Json::array();
  for (std::size_t k = 0; k < chart.rays.size(); ++k) {
    const Mask f = chart.rays[k];
    ray_index[f] = k;
    Json gen = Json::array();
    for (int e = 0; e < m.size(); ++e) gen.push_back(((f >> e) & 1u) ? "-1" : "0");
    rays.push_back(Json{{"flat", m.labels_of(f)}, {"rank", m.rank_of(f)}, {"generator", std::move(gen)}});
  }
  Json chains = Json::array();
  for (const auto& c : chart.chains) {
    Json idx = Json::array();
    for (Mask f : c) idx.push_back(ray_index.at(f));
    chains.push_back(std::move(idx));
  }
  Json out = Json::object();
  out["ground"] = m.ground();
  out["rays"] = std::move(rays);
  out["chains"] = std::move(chains);
  out["maximal_chains"] = chart.maximal_chains().size();
  return out;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string lattice_dot(const Matroid& m, const matroidcore::FlatLattice& lattice) {
  std::ostringstream out;
  out << "graph lattice {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k < lattice.flats.size(); ++k) {
    std::string label;
    for (const auto& l : m.labels_of(lattice.flats[k])) label += (label.empty() ? "" : " ") + l;
    out << "  f" << k << " [label=" << quoted("{" + label + "}") << ", rank=" << lattice.ranks[k] << "];\n";
  }
  for (auto [lo, hi] : lattice.covers) out << "  f" << lo << " -- f" << hi << ";\n";
  out << "}\n";
  return out.str();
}

std::string graph_dot(const tropfan::Graph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (std::size_t k = 0; k < g.vertices.size(); ++k) out << "  v" << k << " [label=" << quoted(g.vertices[k]) << "];\n";
  for (auto [a, b] : g.edges) out << "  v" << a << " -- v" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace lxkit::io
