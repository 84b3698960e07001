#include "chucoal/io.hpp"

#include "chucoal/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace chucoal {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::parse, "document error: " + message);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Recover line/column from the byte offset.
    std::size_t offset = std::min(e.byte, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 <= offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    schema_error(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::string string_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_string()) schema_error(std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

std::vector<std::string> id_list(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_array()) schema_error(std::string("field '") + name + "' must be an array");
  std::vector<std::string> ids;
  ids.reserve(f.size());
  for (const Json& e : f) {
    if (!e.is_string()) schema_error(std::string("field '") + name + "' must hold strings");
    ids.push_back(e.get<std::string>());
  }
  return ids;
}

void expect_kind(const Json& j, const char* kind) {
  if (string_field(j, "kind") != kind) {
    schema_error(std::string("expected kind '") + kind + "', got '" +
                 string_field(j, "kind") + "'");
  }
}

Json pairs_json(const std::map<std::string, std::string>& m) {
  Json a = Json::array();
  for (const auto& [k, v] : m) a.push_back(Json::array({k, v}));
  return a;
}

std::map<std::string, std::string> parse_pairs(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_array()) schema_error(std::string("field '") + name + "' must be an array of pairs");
  std::map<std::string, std::string> m;
  for (const Json& e : f) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      schema_error(std::string("entries of '") + name + "' must be [from, to] string pairs");
    }
    if (!m.emplace(e[0].get<std::string>(), e[1].get<std::string>()).second) {
      schema_error(std::string("duplicate key '") + e[0].get<std::string>() +
                   "' in '" + name + "'");
    }
  }
  return m;
}

// ---- alphabet and values ----------------------------------------------------

Json alphabet_json(const ValueAlphabet& alphabet) {
  switch (alphabet.kind()) {
    case AlphabetKind::symbols:
      return Json{{"kind", "symbols"}, {"symbols", alphabet.symbol_table()}};
    case AlphabetKind::rational_unit:
      return Json{{"kind", "rational"}};
    case AlphabetKind::float_unit:
      return Json{{"kind", "float"}};
  }
  schema_error("unreachable alphabet kind");
}

ValueAlphabet parse_alphabet(const Json& j) {
  std::string kind = string_field(j, "kind");
  if (kind == "symbols") return ValueAlphabet::symbols(id_list(j, "symbols"));
  if (kind == "rational") return ValueAlphabet::rational_unit();
  if (kind == "float") return ValueAlphabet::float_unit();
  schema_error("unknown alphabet kind '" + kind + "'");
}

Json value_json(const ValueAlphabet& alphabet, const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return Json(*d);
  return Json(alphabet.repr(v));  // symbol name, or "p/q"
}

Value parse_value(const ValueAlphabet& alphabet, const Json& j) {
  switch (alphabet.kind()) {
    case AlphabetKind::symbols: {
      if (!j.is_string()) schema_error("symbol values must be strings");
      auto idx = alphabet.symbol_index(j.get<std::string>());
      if (!idx) schema_error("value '" + j.get<std::string>() + "' is not in the alphabet");
      return Value(*idx);
    }
    case AlphabetKind::rational_unit: {
      if (!j.is_string()) schema_error("rational values must be \"p/q\" strings");
      Rational r = parse_rational(j.get<std::string>());
      if (r < Rational(0) || r > Rational(1)) {
        schema_error("value " + rational_repr(r) + " outside [0,1]");
      }
      return Value(r);
    }
    case AlphabetKind::float_unit: {
      if (!j.is_number()) schema_error("float values must be numeric literals");
      double d = j.get<double>();
      if (!(d >= 0.0 && d <= 1.0)) schema_error("value outside [0,1]");
      return Value(d);
    }
  }
  schema_error("unreachable alphabet kind");
}

Json prob_json(const Prob& p) {
  if (const auto* r = std::get_if<Rational>(&p)) return Json(rational_repr(*r));
  return Json(std::get<double>(p));
}

Prob parse_prob(NumericMode mode, const Json& j) {
  if (mode == NumericMode::rational) {
    if (!j.is_string()) schema_error("rational probabilities must be \"p/q\" strings");
    Rational r = parse_rational(j.get<std::string>());
    if (!(r > Rational(0) && r <= Rational(1))) {
      schema_error("probability " + rational_repr(r) + " outside (0,1]");
    }
    return Prob(r);
  }
  if (!j.is_number()) schema_error("float probabilities must be numeric literals");
  double d = j.get<double>();
  if (!(d > 0.0 && d <= 1.0)) {
    schema_error("probability " + double_repr(d) + " outside (0,1]");
  }
  return Prob(d);
}

// ---- complex vectors ---------------------------------------------------------

Json complex_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex parse_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema_error("complex numbers must be [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json vector_json(const StateVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v[i]));
  return a;
}

StateVector parse_vector(const Json& j, int dim) {
  if (!j.is_array()) schema_error("vectors must be arrays of [re, im] pairs");
  if (dim >= 0 && static_cast<int>(j.size()) != dim) {
    schema_error("vector has " + std::to_string(j.size()) + " entries, expected " +
                 std::to_string(dim));
  }
  StateVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_complex(j[i]);
  return v;
}

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix parse_matrix(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    schema_error("matrix must have " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      schema_error("matrix row has wrong length");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- documents ----------------------------------------------------------------

Json chu_json(const ChuSpace& space) {
  Json eval = Json::array();
  for (std::size_t x = 0; x < space.point_count(); ++x) {
    Json row = Json::array();
    for (std::size_t a = 0; a < space.attribute_count(); ++a) {
      row.push_back(value_json(space.alphabet(), space.eval(x, a)));
    }
    eval.push_back(std::move(row));
  }
  return Json{{"kind", "chu"},
              {"alphabet", alphabet_json(space.alphabet())},
              {"points", space.points()},
              {"attributes", space.attributes()},
              {"eval", std::move(eval)}};
}

ChuSpace chu_from_json(const Json& j) {
  expect_kind(j, "chu");
  ValueAlphabet alphabet = parse_alphabet(field(j, "alphabet"));
  auto points = id_list(j, "points");
  auto attributes = id_list(j, "attributes");
  const Json& eval = field(j, "eval");
  if (!eval.is_array() || eval.size() != points.size()) {
    schema_error("eval must have one row per point");
  }
  std::vector<Value> table;
  table.reserve(points.size() * attributes.size());
  for (const Json& row : eval) {
    if (!row.is_array() || row.size() != attributes.size()) {
      schema_error("eval row must have one entry per attribute");
    }
    for (const Json& cell : row) table.push_back(parse_value(alphabet, cell));
  }
  return ChuSpace(std::move(alphabet), std::move(points), std::move(attributes),
                  std::move(table));
}

Json coalgebra_json(const FiniteCoalgebra& c) {
  Json behaviour = Json::array();
  for (std::size_t x = 0; x < c.state_count(); ++x) {
    Json row = Json::array();
    for (std::size_t q = 0; q < c.question_count(); ++q) {
      auto cell = c.cell(x, q);
      if (!cell) {
        row.push_back(nullptr);
      } else {
        row.push_back(Json::array({prob_json(cell->first), cell->second}));
      }
    }
    behaviour.push_back(std::move(row));
  }
  return Json{{"kind", "coalgebra"},
              {"mode", to_string(c.mode())},
              {"questions", c.questions()},
              {"states", c.states()},
              {"behaviour", std::move(behaviour)}};
}

FiniteCoalgebra coalgebra_from_json(const Json& j) {
  expect_kind(j, "coalgebra");
  std::string mode_name = string_field(j, "mode");
  if (mode_name != "rational" && mode_name != "float") {
    schema_error("mode must be \"rational\" or \"float\"");
  }
  NumericMode mode =
      mode_name == "rational" ? NumericMode::rational : NumericMode::floating;
  auto questions = id_list(j, "questions");
  auto states = id_list(j, "states");
  const Json& behaviour = field(j, "behaviour");
  if (!behaviour.is_array() || behaviour.size() != states.size()) {
    schema_error("behaviour must have one row per state");
  }
  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(states.size() * questions.size());
  for (const Json& row : behaviour) {
    if (!row.is_array() || row.size() != questions.size()) {
      schema_error("behaviour row must have one cell per question");
    }
    for (const Json& cell : row) {
      if (cell.is_null()) {
        cells.emplace_back(std::nullopt);
        continue;
      }
      if (!cell.is_array() || cell.size() != 2 || !cell[1].is_string()) {
        schema_error("behaviour cells must be null or [prob, state]");
      }
      cells.emplace_back(
          std::make_pair(parse_prob(mode, cell[0]), cell[1].get<std::string>()));
    }
  }
  return FiniteCoalgebra(mode, std::move(questions), std::move(states),
                         std::move(cells));
}

Json question_map_json(const QuestionMap& m) {
  return Json{{"kind", "questionmap"},
              {"source", m.source()},
              {"target", m.target()},
              {"map", pairs_json(m.assignment())}};
}

QuestionMap question_map_from_json(const Json& j) {
  expect_kind(j, "questionmap");
  return QuestionMap(id_list(j, "source"), id_list(j, "target"),
                     parse_pairs(j, "map"));
}

Json quantum_json(const HilbertSystem& system) {
  Json states = Json::array();
  for (std::size_t i = 0; i < system.states.size(); ++i) {
    states.push_back(Json{{"id", system.state_ids[i]},
                          {"vector", vector_json(system.states[i])}});
  }
  Json questions = Json::array();
  for (std::size_t i = 0; i < system.questions.size(); ++i) {
    Json basis = Json::array();
    const ComplexMatrix& b = system.questions[i].basis();
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      basis.push_back(vector_json(b.col(c)));
    }
    questions.push_back(
        Json{{"id", system.question_ids[i]}, {"basis", std::move(basis)}});
  }
  return Json{{"kind", "quantum"},
              {"dim", system.dim},
              {"states", std::move(states)},
              {"questions", std::move(questions)}};
}

HilbertSystem quantum_from_json(const Json& j) {
  expect_kind(j, "quantum");
  const Json& dim_field = field(j, "dim");
  if (!dim_field.is_number_integer()) schema_error("dim must be an integer");
  int dim = dim_field.get<int>();
  if (dim <= 0) schema_error("dim must be positive");

  HilbertSystem system;
  system.dim = dim;
  for (const Json& s : field(j, "states")) {
    system.state_ids.push_back(string_field(s, "id"));
    system.states.push_back(parse_vector(field(s, "vector"), dim));
    if (system.states.back().norm() == 0.0) schema_error("zero state vector");
  }
  for (const Json& q : field(j, "questions")) {
    system.question_ids.push_back(string_field(q, "id"));
    const Json& basis = field(q, "basis");
    if (!basis.is_array()) schema_error("question basis must be an array");
    ComplexMatrix b(dim, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
      b.col(static_cast<Eigen::Index>(c)) = parse_vector(basis[c], dim);
    }
    try {
      system.questions.emplace_back(dim, std::move(b));
    } catch (const Error& e) {
      schema_error(std::string("question '") + system.question_ids.back() +
                   "': " + e.what());
    }
  }
  return system;
}

Json groth_json(const GrothMorphism& m) {
  return Json{{"kind", "morphism"},
              {"variant", "groth"},
              {"questionmap", question_map_json(m.qmap)},
              {"carrier", pairs_json(m.carrier)}};
}

Json semiunitary_json(const Semiunitary& u) {
  return Json{{"kind", "morphism"},
              {"variant", "semiunitary"},
              {"dim", u.dim()},
              {"antiunitary", u.antiunitary},
              {"matrix", matrix_json(u.matrix)}};
}

Semiunitary semiunitary_from_json(const Json& j) {
  const Json& dim_field = field(j, "dim");
  if (!dim_field.is_number_integer()) schema_error("dim must be an integer");
  int dim = dim_field.get<int>();
  const Json& anti = field(j, "antiunitary");
  if (!anti.is_boolean()) schema_error("antiunitary must be a boolean");
  return Semiunitary{parse_matrix(field(j, "matrix"), dim, dim),
                     anti.get<bool>()};
}

Json ray_map_json(const RayMap& m) {
  Json pairs = Json::array();
  for (const auto& [from, to] : m.pairs) {
    pairs.push_back(Json::array({vector_json(from), vector_json(to)}));
  }
  return Json{{"kind", "morphism"},
              {"variant", "raymap"},
              {"dim", m.dim},
              {"pairs", std::move(pairs)}};
}

RayMap ray_map_from_json(const Json& j) {
  const Json& dim_field = field(j, "dim");
  if (!dim_field.is_number_integer()) schema_error("dim must be an integer");
  RayMap m;
  m.dim = dim_field.get<int>();
  for (const Json& pair : field(j, "pairs")) {
    if (!pair.is_array() || pair.size() != 2) {
      schema_error("raymap pairs must be [argument, image]");
    }
    m.pairs.emplace_back(parse_vector(pair[0], m.dim), parse_vector(pair[1], m.dim));
  }
  return m;
}

Json morphism_json_dispatch(const Json& j, const char* want) {
  expect_kind(j, "morphism");
  std::string variant = string_field(j, "variant");
  if (variant != want) {
    schema_error(std::string("expected morphism variant '") + want +
                 "', got '" + variant + "'");
  }
  return j;
}

// Shared, guarded tree serialization (unfoldings expand shared subtrees).
constexpr std::size_t kTreeNodeCap = 200000;

Json tree_node_json(const BehaviourTree::Node& node, std::size_t& budget) {
  if (budget-- == 0) {
    throw Error(ErrorCode::state_explosion,
                "behaviour tree too large to serialize");
  }
  Json branches = Json::array();
  for (const auto& b : node.branches) {
    if (!b) {
      branches.push_back(nullptr);
    } else if (!b->second) {
      branches.push_back(Json::array({prob_json(b->first)}));
    } else {
      branches.push_back(
          Json::array({prob_json(b->first), tree_node_json(*b->second, budget)}));
    }
  }
  return branches;
}

}  // namespace

StateVector RayMap::apply(const StateVector& psi, double eps) const {
  for (const auto& [from, to] : pairs) {
    if (from.size() == psi.size() && projective_equiv(from, psi, eps)) {
      return to;
    }
  }
  throw Error(ErrorCode::domain_mismatch, "ray not covered by the ray map");
}

std::string print_chu(const ChuSpace& space) { return dump(chu_json(space)); }

std::string print_coalgebra(const FiniteCoalgebra& coalgebra) {
  return dump(coalgebra_json(coalgebra));
}

std::string print_chu_morphism(const ChuMorphism& m) {
  return dump(Json{{"kind", "morphism"},
                   {"variant", "chu"},
                   {"forward", pairs_json(m.forward)},
                   {"backward", pairs_json(m.backward)}});
}

std::string print_state_map(const StateMap& m) {
  return dump(Json{{"kind", "morphism"},
                   {"variant", "statemap"},
                   {"map", pairs_json(m.map)}});
}

std::string print_groth_morphism(const GrothMorphism& m) {
  return dump(groth_json(m));
}

std::string print_question_map(const QuestionMap& m) {
  return dump(question_map_json(m));
}

std::string print_quantum(const HilbertSystem& system) {
  return dump(quantum_json(system));
}

std::string print_semiunitary(const Semiunitary& u) {
  return dump(semiunitary_json(u));
}

std::string print_ray_map(const RayMap& m) { return dump(ray_map_json(m)); }

ChuSpace parse_chu(std::string_view text) { return chu_from_json(parse_json(text)); }

FiniteCoalgebra parse_coalgebra(std::string_view text) {
  return coalgebra_from_json(parse_json(text));
}

ChuMorphism parse_chu_morphism(std::string_view text) {
  Json j = morphism_json_dispatch(parse_json(text), "chu");
  return ChuMorphism{parse_pairs(j, "forward"), parse_pairs(j, "backward")};
}

StateMap parse_state_map(std::string_view text) {
  Json j = morphism_json_dispatch(parse_json(text), "statemap");
  return StateMap{parse_pairs(j, "map")};
}

GrothMorphism parse_groth_morphism(std::string_view text) {
  Json j = morphism_json_dispatch(parse_json(text), "groth");
  return GrothMorphism{question_map_from_json(field(j, "questionmap")),
                       parse_pairs(j, "carrier")};
}

QuestionMap parse_question_map(std::string_view text) {
  return question_map_from_json(parse_json(text));
}

HilbertSystem parse_quantum(std::string_view text) {
  return quantum_from_json(parse_json(text));
}

Semiunitary parse_semiunitary(std::string_view text) {
  return semiunitary_from_json(
      morphism_json_dispatch(parse_json(text), "semiunitary"));
}

RayMap parse_ray_map(std::string_view text) {
  return ray_map_from_json(morphism_json_dispatch(parse_json(text), "raymap"));
}

std::string print_partition(const Partition& p) {
  Json blocks = Json::array();
  for (const auto& block : p.blocks()) blocks.push_back(block);
  return dump(Json{{"kind", "partition"}, {"blocks", std::move(blocks)}});
}

std::string print_collapse(const CollapseResult& r) {
  return dump(Json{{"kind", "collapse"},
                   {"space", chu_json(r.space)},
                   {"point_map", pairs_json(r.point_map)},
                   {"attribute_map", pairs_json(r.attribute_map)}});
}

std::string print_tree(const BehaviourTree& t) {
  std::size_t budget = kTreeNodeCap;
  return dump(Json{{"kind", "tree"},
                   {"depth", t.depth()},
                   {"questions", t.questions()},
                   {"root", tree_node_json(t.root(), budget)}});
}

std::string print_embedding(const EmbeddedSystem& e) {
  return dump(Json{{"kind", "embedding"},
                   {"system", quantum_json(e.system)},
                   {"questionmap", question_map_json(e.qmap)},
                   {"isometry", matrix_json(e.isometry)}});
}

namespace {

void render_node(const BehaviourTree& t, const BehaviourTree::Node& node,
                 int indent, std::ostringstream& out, std::size_t& budget) {
  if (budget-- == 0) {
    throw Error(ErrorCode::state_explosion,
                "behaviour tree too large to render");
  }
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (std::size_t q = 0; q < t.questions().size(); ++q) {
    const auto& b = node.branches[q];
    out << pad << t.questions()[q] << ": ";
    if (!b) {
      out << "no\n";
    } else if (!b->second) {
      out << prob_repr(b->first) << "\n";
    } else {
      out << prob_repr(b->first) << " ->\n";
      render_node(t, *b->second, indent + 1, out, budget);
    }
  }
}

}  // namespace

std::string render_tree_text(const BehaviourTree& t) {
  std::ostringstream out;
  out << "behaviour depth " << t.depth() << " over " << t.questions().size()
      << " questions\n";
  std::size_t budget = kTreeNodeCap;
  render_node(t, t.root(), 0, out, budget);
  return out.str();
}

Document parse_document(std::string_view text) {
  Json j = parse_json(text);
  std::string kind = string_field(j, "kind");
  if (kind == "chu") return chu_from_json(j);
  if (kind == "coalgebra") return coalgebra_from_json(j);
  if (kind == "questionmap") return question_map_from_json(j);
  if (kind == "quantum") return quantum_from_json(j);
  if (kind == "morphism") {
    std::string variant = string_field(j, "variant");
    if (variant == "chu") {
      return ChuMorphism{parse_pairs(j, "forward"), parse_pairs(j, "backward")};
    }
    if (variant == "statemap") return StateMap{parse_pairs(j, "map")};
    if (variant == "groth") {
      return GrothMorphism{question_map_from_json(field(j, "questionmap")),
                           parse_pairs(j, "carrier")};
    }
    if (variant == "semiunitary") return semiunitary_from_json(j);
    if (variant == "raymap") return ray_map_from_json(j);
    schema_error("unknown morphism variant '" + variant + "'");
  }
  schema_error("unknown document kind '" + kind + "'");
}

namespace {

void validate_tree_node(const Json& node, std::size_t questions, int depth) {
  if (!node.is_array() || node.size() != questions) {
    schema_error("tree node must have one branch per question");
  }
  for (const Json& branch : node) {
    if (branch.is_null()) continue;
    if (!branch.is_array() || branch.empty() || branch.size() > 2) {
      schema_error("tree branches must be null, [prob] or [prob, subtree]");
    }
    if (depth == 0) {
      if (branch.size() != 1) schema_error("depth-0 branches carry no subtree");
    } else {
      if (branch.size() != 2) schema_error("positive-depth branches need a subtree");
      validate_tree_node(branch[1], questions, depth - 1);
    }
  }
}

}  // namespace

std::string validate_document(std::string_view text) {
  Json j = parse_json(text);
  std::string kind = string_field(j, "kind");

  if (kind == "embedding") {
    HilbertSystem system = quantum_from_json(field(j, "system"));
    QuestionMap qmap = question_map_from_json(field(j, "questionmap"));
    const Json& iso = field(j, "isometry");
    if (!iso.is_array() || static_cast<int>(iso.size()) != system.dim) {
      schema_error("isometry must have one row per universal dimension");
    }
    return "embedding into dim " + std::to_string(system.dim) + ", " +
           std::to_string(qmap.source().size()) + " questions";
  }
  if (kind == "collapse") {
    ChuSpace space = chu_from_json(field(j, "space"));
    parse_pairs(j, "point_map");
    parse_pairs(j, "attribute_map");
    return "collapse result, " + std::to_string(space.point_count()) +
           " points x " + std::to_string(space.attribute_count()) +
           " attributes";
  }
  if (kind == "quotient") {
    FiniteCoalgebra c = coalgebra_from_json(field(j, "coalgebra"));
    const Json& projection = field(j, "projection");
    parse_pairs(projection, "map");
    return "quotient coalgebra, " + std::to_string(c.state_count()) +
           " blocks";
  }
  if (kind == "partition") {
    const Json& blocks = field(j, "blocks");
    if (!blocks.is_array()) schema_error("blocks must be an array");
    std::size_t members = 0;
    for (const Json& block : blocks) {
      if (!block.is_array() || block.empty()) {
        schema_error("partition blocks must be nonempty arrays");
      }
      members += block.size();
    }
    return "partition, " + std::to_string(blocks.size()) + " blocks over " +
           std::to_string(members) + " states";
  }
  if (kind == "tree") {
    const Json& depth_field = field(j, "depth");
    if (!depth_field.is_number_integer() || depth_field.get<int>() < 0) {
      schema_error("depth must be a non-negative integer");
    }
    auto questions = id_list(j, "questions");
    validate_tree_node(field(j, "root"), questions.size(),
                       depth_field.get<int>());
    return "behaviour tree, depth " + std::to_string(depth_field.get<int>()) +
           " over " + std::to_string(questions.size()) + " questions";
  }
  if (kind == "report") {
    const Json& checks = field(j, "checks");
    if (!checks.is_array()) schema_error("checks must be an array");
    for (const Json& check : checks) {
      string_field(check, "label");
      string_field(check, "status");
    }
    return "suite report, " + std::to_string(checks.size()) + " checks";
  }
  return describe(parse_document(text));
}

std::string describe(const Document& doc) {
  struct Visitor {
    std::string operator()(const ChuSpace& s) const {
      return "chu space, " + std::to_string(s.point_count()) + " points x " +
             std::to_string(s.attribute_count()) + " attributes";
    }
    std::string operator()(const FiniteCoalgebra& c) const {
      return std::string("coalgebra (") + to_string(c.mode()) + "), " +
             std::to_string(c.state_count()) + " states x " +
             std::to_string(c.question_count()) + " questions";
    }
    std::string operator()(const ChuMorphism& m) const {
      return "chu morphism, " + std::to_string(m.forward.size()) +
             " forward / " + std::to_string(m.backward.size()) +
             " backward assignments";
    }
    std::string operator()(const StateMap& m) const {
      return "state map, " + std::to_string(m.map.size()) + " assignments";
    }
    std::string operator()(const GrothMorphism& m) const {
      return "glued-category morphism, " +
             std::to_string(m.qmap.assignment().size()) + " question / " +
             std::to_string(m.carrier.size()) + " carrier assignments";
    }
    std::string operator()(const QuestionMap& m) const {
      return std::string("question map, ") +
             std::to_string(m.source().size()) + " -> " +
             std::to_string(m.target().size()) +
             (m.surjective() ? " (surjective)" : "");
    }
    std::string operator()(const HilbertSystem& h) const {
      return "quantum system, dim " + std::to_string(h.dim) + ", " +
             std::to_string(h.states.size()) + " states, " +
             std::to_string(h.questions.size()) + " questions";
    }
    std::string operator()(const Semiunitary& u) const {
      return std::string(u.antiunitary ? "antiunitary" : "unitary") +
             ", dim " + std::to_string(u.dim());
    }
    std::string operator()(const RayMap& m) const {
      return "ray map, dim " + std::to_string(m.dim) + ", " +
             std::to_string(m.pairs.size()) + " pairs";
    }
  };
  return std::visit(Visitor{}, doc);
}

}  // namespace chucoal
