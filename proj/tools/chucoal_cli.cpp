// chucoal — command-line workbench for finite Chu spaces, question
// coalgebras, bisimulation, and the finite-dimensional quantum back-end.
//
// Exit codes: 0 = pass, 1 = check failure, 2 = usage or parse error.

#include "chucoal/bisimulation.hpp"
#include "chucoal/chu.hpp"
#include "chucoal/coalgebra.hpp"
#include "chucoal/error.hpp"
#include "chucoal/indexed.hpp"
#include "chucoal/io.hpp"
#include "chucoal/quantum.hpp"
#include "chucoal/random.hpp"
#include "chucoal/suite.hpp"
#include "chucoal/unfold.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw chucoal::Error(chucoal::ErrorCode::parse,
                         "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw chucoal::Error(chucoal::ErrorCode::parse,
                         "cannot write '" + out_path + "'");
  }
  out << text;
}

// Kind-checked document access with a parse-level error on mismatch.
template <typename T>
const T& expect(const chucoal::Document& doc, const char* what) {
  const T* value = std::get_if<T>(&doc);
  if (!value) {
    throw chucoal::Error(chucoal::ErrorCode::parse,
                         std::string("expected a ") + what + " document, got " +
                             chucoal::describe(doc));
  }
  return *value;
}

chucoal::NumericMode parse_mode(const std::string& name) {
  if (name == "rational") return chucoal::NumericMode::rational;
  if (name == "float") return chucoal::NumericMode::floating;
  throw chucoal::Error(chucoal::ErrorCode::parse,
                       "mode must be 'rational' or 'float'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for Chu spaces, question coalgebras, and "
               "finite-dimensional quantum systems"};
  app.require_subcommand(1);

  // ---- validate -----------------------------------------------------------
  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "parse and check documents");
  validate->add_option("files", validate_files, "documents to validate")
      ->required();

  // ---- check-morphism -----------------------------------------------------
  std::string cm_source, cm_target, cm_morphism;
  double cm_eps = chucoal::kDefaultEps;
  auto* check_morphism_cmd = app.add_subcommand(
      "check-morphism", "verify a morphism between two documents");
  check_morphism_cmd->add_option("source", cm_source)->required();
  check_morphism_cmd->add_option("target", cm_target)->required();
  check_morphism_cmd->add_option("morphism", cm_morphism)->required();
  check_morphism_cmd->add_option("--eps", cm_eps, "float equality tolerance");

  // ---- compose ------------------------------------------------------------
  std::string comp_outer, comp_inner, comp_out;
  auto* compose_cmd =
      app.add_subcommand("compose", "compose two morphisms (outer . inner)");
  compose_cmd->add_option("outer", comp_outer)->required();
  compose_cmd->add_option("inner", comp_inner)->required();
  compose_cmd->add_option("-o,--out", comp_out, "output file (default stdout)");

  // ---- collapse -----------------------------------------------------------
  std::string col_space, col_out;
  double col_eps = chucoal::kDefaultEps;
  auto* collapse_cmd =
      app.add_subcommand("collapse", "biextensional collapse of a Chu space");
  collapse_cmd->add_option("space", col_space)->required();
  collapse_cmd->add_option("--eps", col_eps);
  collapse_cmd->add_option("-o,--out", col_out);

  // ---- bisim --------------------------------------------------------------
  std::string bi_left, bi_right, bi_x, bi_y, bi_out;
  double bi_grid = chucoal::kDefaultEpsGrid;
  auto* bisim_cmd = app.add_subcommand(
      "bisim", "greatest bisimulation partition, or a two-state verdict");
  bisim_cmd->add_option("left", bi_left)->required();
  bisim_cmd->add_option("right", bi_right)->required();
  bisim_cmd->add_option("--left-state", bi_x);
  bisim_cmd->add_option("--right-state", bi_y);
  bisim_cmd->add_option("--eps-grid", bi_grid);
  bisim_cmd->add_option("-o,--out", bi_out);

  // ---- quotient -----------------------------------------------------------
  std::string quot_in, quot_out;
  double quot_grid = chucoal::kDefaultEpsGrid;
  auto* quotient_cmd =
      app.add_subcommand("quotient", "strongly extensional quotient");
  quotient_cmd->add_option("coalgebra", quot_in)->required();
  quotient_cmd->add_option("--eps-grid", quot_grid);
  quotient_cmd->add_option("-o,--out", quot_out);

  // ---- reindex ------------------------------------------------------------
  std::string re_map, re_in, re_out;
  auto* reindex_cmd = app.add_subcommand(
      "reindex", "precompose a coalgebra or Chu space with a question map");
  reindex_cmd->add_option("--map", re_map, "questionmap document")->required();
  reindex_cmd->add_option("input", re_in)->required();
  reindex_cmd->add_option("-o,--out", re_out);

  // ---- truncate -----------------------------------------------------------
  std::string tr_in, tr_out;
  auto* truncate_cmd = app.add_subcommand(
      "truncate", "forget successors: coalgebra to Chu space");
  truncate_cmd->add_option("coalgebra", tr_in)->required();
  truncate_cmd->add_option("-o,--out", tr_out);

  // ---- embed-static -------------------------------------------------------
  std::string es_in, es_out;
  auto* embed_static_cmd = app.add_subcommand(
      "embed-static", "embed a numeric Chu space as a static coalgebra");
  embed_static_cmd->add_option("space", es_in)->required();
  embed_static_cmd->add_option("-o,--out", es_out);

  // ---- groth-check --------------------------------------------------------
  std::string gc_source, gc_target, gc_morphism;
  double gc_eps = chucoal::kDefaultEps;
  auto* groth_check_cmd = app.add_subcommand(
      "groth-check", "verify a glued-category morphism between documents");
  groth_check_cmd->add_option("--source", gc_source)->required();
  groth_check_cmd->add_option("--target", gc_target)->required();
  groth_check_cmd->add_option("morphism", gc_morphism)->required();
  groth_check_cmd->add_option("--eps", gc_eps);

  // ---- groth-compose ------------------------------------------------------
  std::string gco_outer, gco_inner, gco_out;
  auto* groth_compose_cmd =
      app.add_subcommand("groth-compose", "compose glued-category morphisms");
  groth_compose_cmd->add_option("outer", gco_outer)->required();
  groth_compose_cmd->add_option("inner", gco_inner)->required();
  groth_compose_cmd->add_option("-o,--out", gco_out);

  // ---- quantum-gen --------------------------------------------------------
  int qg_dim = 2;
  std::size_t qg_states = 2, qg_questions = 0;
  std::uint64_t qg_seed = 1;
  bool qg_discriminating = false;
  std::string qg_out;
  auto* quantum_gen_cmd =
      app.add_subcommand("quantum-gen", "seeded random quantum system");
  quantum_gen_cmd->add_option("--dim", qg_dim);
  quantum_gen_cmd->add_option("--states", qg_states);
  quantum_gen_cmd->add_option("--questions", qg_questions,
                              "random ray questions (0 = discriminating set)");
  quantum_gen_cmd->add_option("--seed", qg_seed);
  quantum_gen_cmd->add_flag("--discriminating", qg_discriminating,
                            "use the discriminating question set");
  quantum_gen_cmd->add_option("-o,--out", qg_out);

  // ---- quantum-embed ------------------------------------------------------
  std::string qe_in, qe_out;
  int qe_universal = 8;
  auto* quantum_embed_cmd = app.add_subcommand(
      "quantum-embed", "isometric embedding into the universal space");
  quantum_embed_cmd->add_option("system", qe_in)->required();
  quantum_embed_cmd->add_option("--universal-dim", qe_universal);
  quantum_embed_cmd->add_option("-o,--out", qe_out);

  // ---- wigner -------------------------------------------------------------
  std::string wg_in, wg_out;
  double wg_fit = 1e-7;
  bool wg_emit = false;
  auto* wigner_cmd = app.add_subcommand(
      "wigner",
      "reconstruct a semiunitary from a probe ray map (or emit the probe map "
      "of a semiunitary with --emit-raymap)");
  wigner_cmd->add_option("input", wg_in)->required();
  wigner_cmd->add_option("--fit-tol", wg_fit);
  wigner_cmd->add_flag("--emit-raymap", wg_emit);
  wigner_cmd->add_option("-o,--out", wg_out);

  // ---- unfold -------------------------------------------------------------
  std::string un_in, un_state, un_format = "text", un_out;
  int un_depth = 2;
  auto* unfold_cmd =
      app.add_subcommand("unfold", "finite-depth behaviour tree of a state");
  unfold_cmd->add_option("coalgebra", un_in)->required();
  unfold_cmd->add_option("--state", un_state)->required();
  unfold_cmd->add_option("--depth", un_depth);
  unfold_cmd->add_option("--format", un_format, "text (default) or doc");
  unfold_cmd->add_option("-o,--out", un_out);

  // ---- diff-behaviour -----------------------------------------------------
  std::string db_left, db_right, db_x, db_y;
  std::optional<int> db_depth;
  double db_eps = chucoal::kDefaultEps;
  auto* diff_cmd = app.add_subcommand(
      "diff-behaviour", "shallowest question path separating two states");
  diff_cmd->add_option("left", db_left)->required();
  diff_cmd->add_option("right", db_right)->required();
  diff_cmd->add_option("--left-state", db_x)->required();
  diff_cmd->add_option("--right-state", db_y)->required();
  diff_cmd->add_option("--depth", db_depth);
  diff_cmd->add_option("--eps", db_eps);

  // ---- verify-suite -------------------------------------------------------
  chucoal::SuiteConfig suite_config;
  std::string vs_mode = "rational", vs_json_out = "chucoal-report.json";
  std::vector<std::string> vs_only;
  auto* verify_cmd = app.add_subcommand(
      "verify-suite", "run every registered proposition check");
  verify_cmd->add_option("--seed", suite_config.seed);
  verify_cmd->add_option("--mode", vs_mode, "rational (default) or float");
  verify_cmd->add_option("--eps", suite_config.eps_eq);
  verify_cmd->add_option("--eps-grid", suite_config.eps_grid);
  verify_cmd->add_option("--universal-dim", suite_config.universal_dim);
  verify_cmd->add_option("--sample-scale", suite_config.sample_scale,
                         "sample-count multiplier (1.0 = full battery)");
  verify_cmd->add_option("--only", vs_only, "run only these check labels");
  verify_cmd->add_option("--json-out", vs_json_out,
                         "machine-readable report file ('-' for stdout)");
  bool vs_list = false;
  verify_cmd->add_flag("--list", vs_list, "list check labels and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  using namespace chucoal;
  try {
    if (*validate) {
      for (const auto& file : validate_files) {
        std::cout << file << ": ok: " << validate_document(read_file(file))
                  << "\n";
      }
      return kExitPass;
    }

    if (*check_morphism_cmd) {
      Document source = parse_document(read_file(cm_source));
      Document target = parse_document(read_file(cm_target));
      Document morphism = parse_document(read_file(cm_morphism));
      bool valid = false;
      if (auto* m = std::get_if<ChuMorphism>(&morphism)) {
        valid = check_chu_morphism(expect<ChuSpace>(source, "chu"),
                                   expect<ChuSpace>(target, "chu"), *m, cm_eps);
      } else if (auto* h = std::get_if<StateMap>(&morphism)) {
        valid = check_homomorphism(expect<FiniteCoalgebra>(source, "coalgebra"),
                                   expect<FiniteCoalgebra>(target, "coalgebra"),
                                   h->map, cm_eps);
      } else if (auto* g = std::get_if<GrothMorphism>(&morphism)) {
        if (std::holds_alternative<ChuSpace>(source)) {
          valid = groth_check(*g, expect<ChuSpace>(source, "chu"),
                              expect<ChuSpace>(target, "chu"), cm_eps);
        } else {
          valid = groth_check(*g, expect<FiniteCoalgebra>(source, "coalgebra"),
                              expect<FiniteCoalgebra>(target, "coalgebra"),
                              cm_eps);
        }
      } else {
        throw Error(ErrorCode::parse,
                    "morphism document must be a chu, statemap or groth "
                    "morphism");
      }
      std::cout << (valid ? "valid" : "invalid") << "\n";
      return valid ? kExitPass : kExitCheckFailure;
    }

    if (*compose_cmd) {
      Document outer = parse_document(read_file(comp_outer));
      Document inner = parse_document(read_file(comp_inner));
      if (std::holds_alternative<ChuMorphism>(outer)) {
        ChuMorphism composed = compose_chu(std::get<ChuMorphism>(outer),
                                           std::get<ChuMorphism>(inner));
        emit(print_chu_morphism(composed), comp_out);
      } else if (std::holds_alternative<QuestionMap>(outer)) {
        QuestionMap composed = compose_question_maps(
            std::get<QuestionMap>(outer), std::get<QuestionMap>(inner));
        emit(print_question_map(composed), comp_out);
      } else if (std::holds_alternative<GrothMorphism>(outer)) {
        GrothMorphism composed = groth_compose(std::get<GrothMorphism>(outer),
                                               std::get<GrothMorphism>(inner));
        emit(print_groth_morphism(composed), comp_out);
      } else if (std::holds_alternative<StateMap>(outer)) {
        const auto& g = std::get<StateMap>(outer).map;
        const auto& f = std::get<StateMap>(inner).map;
        StateMap composed;
        for (const auto& [x, y] : f) {
          auto it = g.find(y);
          if (it == g.end()) {
            throw Error(ErrorCode::domain_mismatch,
                        "state maps do not compose: no image for '" + y + "'",
                        y);
          }
          composed.map.emplace(x, it->second);
        }
        emit(print_state_map(composed), comp_out);
      } else {
        throw Error(ErrorCode::parse, "cannot compose these document kinds");
      }
      return kExitPass;
    }

    if (*collapse_cmd) {
      ChuSpace space = parse_chu(read_file(col_space));
      emit(print_collapse(biextensional_collapse(space, col_eps)), col_out);
      return kExitPass;
    }

    if (*bisim_cmd) {
      FiniteCoalgebra left = parse_coalgebra(read_file(bi_left));
      FiniteCoalgebra right = parse_coalgebra(read_file(bi_right));
      if (!bi_x.empty() || !bi_y.empty()) {
        if (bi_x.empty() || bi_y.empty()) {
          throw Error(ErrorCode::parse,
                      "state verdicts need both --left-state and --right-state");
        }
        bool related = bisimilar(left, bi_x, right, bi_y, {bi_grid});
        std::cout << (related ? "bisimilar" : "not bisimilar") << "\n";
        return related ? kExitPass : kExitCheckFailure;
      }
      Partition p = largest_bisimulation(left, right, {bi_grid});
      emit(print_partition(p), bi_out);
      return kExitPass;
    }

    if (*quotient_cmd) {
      FiniteCoalgebra c = parse_coalgebra(read_file(quot_in));
      QuotientResult q = strongly_extensional_quotient(c, {quot_grid});
      // Combined output: the quotient coalgebra plus the projection map.
      std::string doc = "{\n  \"kind\": \"quotient\",\n  \"coalgebra\": ";
      std::string coalg = print_coalgebra(q.coalgebra);
      coalg.pop_back();  // trailing newline
      doc += coalg;
      doc += ",\n  \"projection\": ";
      std::string proj = print_state_map(StateMap{q.projection});
      proj.pop_back();
      doc += proj;
      doc += "\n}\n";
      emit(doc, quot_out);
      return kExitPass;
    }

    if (*reindex_cmd) {
      QuestionMap f = parse_question_map(read_file(re_map));
      Document input = parse_document(read_file(re_in));
      if (auto* c = std::get_if<FiniteCoalgebra>(&input)) {
        emit(print_coalgebra(reindex_coalgebra(f, *c)), re_out);
      } else if (auto* s = std::get_if<ChuSpace>(&input)) {
        emit(print_chu(reindex_chu(f, *s)), re_out);
      } else {
        throw Error(ErrorCode::parse,
                    "reindex expects a coalgebra or chu document");
      }
      return kExitPass;
    }

    if (*truncate_cmd) {
      emit(print_chu(truncate(parse_coalgebra(read_file(tr_in)))), tr_out);
      return kExitPass;
    }

    if (*embed_static_cmd) {
      emit(print_coalgebra(static_embed(parse_chu(read_file(es_in)))), es_out);
      return kExitPass;
    }

    if (*groth_check_cmd) {
      GrothMorphism m = parse_groth_morphism(read_file(gc_morphism));
      Document source = parse_document(read_file(gc_source));
      Document target = parse_document(read_file(gc_target));
      bool valid;
      if (std::holds_alternative<ChuSpace>(source)) {
        valid = groth_check(m, expect<ChuSpace>(source, "chu"),
                            expect<ChuSpace>(target, "chu"), gc_eps);
      } else {
        valid = groth_check(m, expect<FiniteCoalgebra>(source, "coalgebra"),
                            expect<FiniteCoalgebra>(target, "coalgebra"),
                            gc_eps);
      }
      std::cout << (valid ? "valid" : "invalid") << "\n";
      return valid ? kExitPass : kExitCheckFailure;
    }

    if (*groth_compose_cmd) {
      GrothMorphism outer = parse_groth_morphism(read_file(gco_outer));
      GrothMorphism inner = parse_groth_morphism(read_file(gco_inner));
      emit(print_groth_morphism(groth_compose(outer, inner)), gco_out);
      return kExitPass;
    }

    if (*quantum_gen_cmd) {
      Rng rng(qg_seed);
      std::vector<StateVector> states;
      for (std::size_t i = 0; i < qg_states; ++i) {
        states.push_back(random_state(rng, qg_dim));
      }
      std::vector<Subspace> questions;
      if (qg_discriminating || qg_questions == 0) {
        questions = discriminating_questions(states, qg_dim);
      } else {
        for (std::size_t i = 0; i < qg_questions; ++i) {
          questions.push_back(Subspace::ray(random_state(rng, qg_dim)));
        }
      }
      emit(print_quantum(make_hilbert_system(qg_dim, std::move(states),
                                             std::move(questions))),
           qg_out);
      return kExitPass;
    }

    if (*quantum_embed_cmd) {
      HilbertSystem system = parse_quantum(read_file(qe_in));
      emit(print_embedding(embed_system(system, qe_universal)), qe_out);
      return kExitPass;
    }

    if (*wigner_cmd) {
      Document input = parse_document(read_file(wg_in));
      if (wg_emit) {
        const auto* u = std::get_if<Semiunitary>(&input);
        if (!u) {
          throw Error(ErrorCode::parse,
                      "--emit-raymap expects a semiunitary document");
        }
        RayMap map;
        map.dim = u->dim();
        for (const StateVector& probe : wigner_probe_rays(u->dim())) {
          map.pairs.emplace_back(probe, u->apply(probe));
        }
        emit(print_ray_map(map), wg_out);
        return kExitPass;
      }
      const auto* map = std::get_if<RayMap>(&input);
      if (!map) {
        throw Error(ErrorCode::parse, "wigner expects a raymap document");
      }
      Semiunitary u = wigner_reconstruct(
          [&](const StateVector& p) { return map->apply(p); }, map->dim,
          wg_fit);
      emit(print_semiunitary(u), wg_out);
      return kExitPass;
    }

    if (*unfold_cmd) {
      FiniteCoalgebra c = parse_coalgebra(read_file(un_in));
      BehaviourTree tree = unfold(c, un_state, un_depth);
      if (un_format == "doc") {
        emit(print_tree(tree), un_out);
      } else if (un_format == "text") {
        emit(render_tree_text(tree), un_out);
      } else {
        throw Error(ErrorCode::parse, "--format must be 'text' or 'doc'");
      }
      return kExitPass;
    }

    if (*diff_cmd) {
      FiniteCoalgebra left = parse_coalgebra(read_file(db_left));
      FiniteCoalgebra right = parse_coalgebra(read_file(db_right));
      int depth = db_depth.value_or(
          static_cast<int>(left.state_count() + right.state_count()));
      auto diff = behaviour_diff(unfold(left, db_x, depth),
                                 unfold(right, db_y, depth), db_eps);
      if (!diff) {
        std::cout << "equal\n";
        return kExitPass;
      }
      std::cout << "differ at:";
      for (const auto& q : *diff) std::cout << " " << q;
      std::cout << "\n";
      return kExitCheckFailure;
    }

    if (*verify_cmd) {
      if (vs_list) {
        for (const auto& label : suite_check_labels()) {
          std::cout << label << "\n";
        }
        return kExitPass;
      }
      suite_config.mode = parse_mode(vs_mode);
      suite_config.only = vs_only;
      SuiteReport report = run_suite(suite_config);
      std::cout << report.table();
      emit(report.to_json(), vs_json_out);
      if (vs_json_out != "-") {
        std::cout << "machine-readable report: " << vs_json_out << "\n";
      }
      return report.ok() ? kExitPass : kExitCheckFailure;
    }
  } catch (const chucoal::ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ", column "
              << e.column() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const chucoal::Error& e) {
    if (e.code() == chucoal::ErrorCode::parse) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }

  std::cerr << "no subcommand selected\n";
  return kExitUsage;
}
