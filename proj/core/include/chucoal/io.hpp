#pragma once

#include "chucoal/bisimulation.hpp"
#include "chucoal/chu.hpp"
#include "chucoal/coalgebra.hpp"
#include "chucoal/indexed.hpp"
#include "chucoal/quantum.hpp"
#include "chucoal/unfold.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace chucoal {

// Self-describing JSON documents, one `kind` per payload. The five core
// kinds are "chu", "coalgebra", "morphism" (variants: chu, statemap, groth,
// raymap, semiunitary), "questionmap" and "quantum"; the exact grammar is
// fixed in docs/FORMAT.md. parse(print(x)) == x, bit-exact in rational mode.

// A bare carrier map (homomorphism candidate) as a document payload.
struct StateMap {
  std::map<std::string, std::string> map;
  bool operator==(const StateMap&) const = default;
};

// A partial ray transformation as explicit (argument, image) vector pairs.
struct RayMap {
  int dim = 0;
  std::vector<std::pair<StateVector, StateVector>> pairs;

  // Projective lookup of `psi` among the argument rays.
  StateVector apply(const StateVector& psi, double eps = 1e-7) const;
};

std::string print_chu(const ChuSpace& space);
std::string print_coalgebra(const FiniteCoalgebra& coalgebra);
std::string print_chu_morphism(const ChuMorphism& m);
std::string print_state_map(const StateMap& m);
std::string print_groth_morphism(const GrothMorphism& m);
std::string print_question_map(const QuestionMap& m);
std::string print_quantum(const HilbertSystem& system);
std::string print_semiunitary(const Semiunitary& u);
std::string print_ray_map(const RayMap& m);

ChuSpace parse_chu(std::string_view text);
FiniteCoalgebra parse_coalgebra(std::string_view text);
ChuMorphism parse_chu_morphism(std::string_view text);
StateMap parse_state_map(std::string_view text);
GrothMorphism parse_groth_morphism(std::string_view text);
QuestionMap parse_question_map(std::string_view text);
HilbertSystem parse_quantum(std::string_view text);
Semiunitary parse_semiunitary(std::string_view text);
RayMap parse_ray_map(std::string_view text);

// Output-only documents.
std::string print_partition(const Partition& p);
std::string print_collapse(const CollapseResult& r);
std::string print_tree(const BehaviourTree& t);
std::string print_embedding(const EmbeddedSystem& e);

// Indented plain-text rendering of a behaviour tree.
std::string render_tree_text(const BehaviourTree& t);

// Any parseable document, for kind-dispatching consumers.
using Document = std::variant<ChuSpace, FiniteCoalgebra, ChuMorphism, StateMap,
                              GrothMorphism, QuestionMap, HilbertSystem,
                              Semiunitary, RayMap>;

Document parse_document(std::string_view text);

// One-line summary ("chu space, 3 points x 4 attributes", ...).
std::string describe(const Document& doc);

// Parses and sanity-checks any document the workbench emits, including the
// output-only kinds, and returns its one-line summary.
std::string validate_document(std::string_view text);

}  // namespace chucoal
