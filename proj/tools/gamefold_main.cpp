// Command-line driver: validation, verification, measures, retractions,
// d-state reports, solvers and reproducible run manifests.
//
// Exit codes: 0 verdict-positive, 1 verdict-negative, 2 input error,
// 3 budget exhausted or unknown.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gamefold/io.hpp"
#include "gamefold/random.hpp"
#include "gamefold/solvers.hpp"

using namespace gamefold;

namespace {

constexpr const char* kVersion = "gamefold 0.1.0";

enum ExitCode { kPositive = 0, kNegative = 1, kInputError = 2, kExhausted = 3 };

struct Driver {
  bool human = false;
  std::string manifest_path;
  RunManifest manifest;
  std::ostringstream report;

  void input(const std::string& path, const std::string& content) {
    manifest.inputs.push_back({path, sha256_hex(content)});
  }
  std::string read_input(const std::string& path) {
    std::string content = read_file(path);
    input(path, content);
    return content;
  }
  void output(const std::string& path, const std::string& content) {
    write_file(path, content);
    manifest.outputs.push_back({path, sha256_hex(content)});
  }
  void verdict(const std::string& line) {
    manifest.verdicts.push_back(line);
    report << line << "\n";
  }
  void kv(const std::string& key, const std::string& value) {
    report << key << ": " << value << "\n";
  }
  int finish(int code) {
    std::cout << report.str();
    if (!manifest_path.empty()) {
      manifest.version = kVersion;
      write_file(manifest_path, serialize_manifest(manifest));
    }
    return code;
  }
};

ParsedGame load_game(Driver& driver, const std::string& path) {
  return parse_game_text(driver.read_input(path));
}

std::string history_string(const GameSpec& game, const History& h) {
  return h.empty() ? "(empty)" : format_history(game, h);
}

std::string lasso_string(const DecisionStructure& s, const Lasso& lasso) {
  std::string out = "stem:";
  for (int v : lasso.stem) out += " " + s.nodes[v];
  out += " cycle:";
  for (int v : lasso.cycle) out += " " + s.nodes[v];
  return out;
}

const ParityTreeAutomaton& require_spec(const ParsedGame& parsed) {
  if (!parsed.spec) {
    throw Error(Error::Code::Validation, "the game file declares no specification");
  }
  return *parsed.spec;
}

// Delay-form files describe the base game; every file-facing command works
// on the expanded form (generated observers, lag-indifferent specification).
struct Materialized {
  GameSpec game;
  ParityTreeAutomaton spec;
};

Materialized materialize(const ParsedGame& parsed) {
  if (!parsed.delay) return {parsed.game, require_spec(parsed)};
  DelayExpansion expansion = expand_delay_game(parsed.game, require_spec(parsed), *parsed.delay);
  return {std::move(expansion.game), std::move(expansion.spec)};
}

int run_validate(Driver& driver, const std::string& game_path) {
  ParsedGame parsed = load_game(driver, game_path);
  std::vector<Diagnostic> diags;
  if (parsed.delay) {
    // Observers are generated; validate the expanded form.
    DelayExpansion expansion =
        expand_delay_game(parsed.game, require_spec(parsed), *parsed.delay);
    diags = validate_game(expansion.game);
    auto more = validate_automaton(expansion.spec, expansion.game);
    diags.insert(diags.end(), more.begin(), more.end());
  } else {
    diags = validate_game(parsed.game);
    if (parsed.spec) {
      auto more = validate_automaton(*parsed.spec, parsed.game);
      diags.insert(diags.end(), more.begin(), more.end());
    }
  }
  for (const auto& d : diags) {
    driver.report << "diagnostic { code: " << d.code << " message: " << d.message << " }\n";
  }
  driver.verdict(diags.empty() ? "valid" : "invalid (" + std::to_string(diags.size()) +
                                               " diagnostics)");
  return driver.finish(diags.empty() ? kPositive : kNegative);
}

int run_verify(Driver& driver, const std::string& game_path, const std::string& strategy_path,
               const std::string& certificate_path, const std::string& dot_path,
               bool all_histories) {
  ParsedGame parsed = load_game(driver, game_path);
  auto [game, spec_m] = materialize(parsed);
  DecisionStructure s;
  std::optional<Annotation> labels;
  std::optional<ProgressMeasure> measure;
  if (!certificate_path.empty()) {
    CertificateFile cert =
        parse_certificate_text(game, spec_m, driver.read_input(certificate_path));
    s = cert.structure;
    labels = cert.labels;
    measure = cert.measure;
  } else {
    s = parse_strategy_text(game, driver.read_input(strategy_path));
  }
  UniformityOptions uopts;
  uopts.all_histories = all_histories;
  int code = kPositive;
  if (auto violation = check_strategy(s, game, uopts)) {
    driver.kv("strategy-check", "violation");
    driver.report << "violation {\n  player: " << violation->player << "\n  node: "
                  << s.nodes[violation->u] << "\n  node: " << s.nodes[violation->v]
                  << "\n  history: " << history_string(game, violation->witness_u)
                  << "\n  history: " << history_string(game, violation->witness_v) << "\n}\n";
    code = kNegative;
  } else {
    driver.kv("strategy-check", "ok");
  }
  if (labels && code == kPositive) {
    AnnotatedStrategy annotated = attach_labels(s, labels->mealy, labels->wstate);
    const ParityTreeAutomaton& spec = spec_m;
    if (auto violation = check_annotation(annotated, game, spec)) {
      driver.kv("annotation-check", "violation at node " + s.nodes[violation->node] + ": " +
                                        violation->detail);
      code = kNegative;
    } else {
      driver.kv("annotation-check", "ok");
      WitnessResult w = is_witness(annotated, spec);
      driver.kv("witness", w.accepting ? "true" : "false");
      if (!w.accepting) {
        driver.report << "counterexample { " << lasso_string(s, *w.counterexample) << " }\n";
        code = kNegative;
      }
      if (measure && code == kPositive) {
        if (auto violation = check_measure(annotated, spec, *measure)) {
          driver.kv("measure-check", "violation at edge " + s.nodes[violation->node] + " / " +
                                         game.directions[violation->dir]);
          code = kNegative;
        } else {
          driver.kv("measure-check", "ok");
        }
      }
    }
  }
  if (!dot_path.empty()) {
    UniformityRelation uni = compute_uniformity(s, game, uopts);
    driver.output(dot_path, export_dot_strategy(game, s, &uni));
  }
  driver.verdict(code == kPositive ? "verified" : "rejected");
  return driver.finish(code);
}

int run_measure(Driver& driver, const std::string& action, const std::string& game_path,
                const std::string& certificate_path, const std::string& out_path) {
  ParsedGame parsed = load_game(driver, game_path);
  auto [game, spec] = materialize(parsed);
  CertificateFile cert =
      parse_certificate_text(game, spec, driver.read_input(certificate_path));
  if (!cert.labels) {
    throw Error(Error::Code::Validation, "certificate carries no labels");
  }
  AnnotatedStrategy annotated = attach_labels(cert.structure, cert.labels->mealy,
                                              cert.labels->wstate);
  if (auto violation = check_annotation(annotated, game, spec)) {
    driver.verdict("annotation invalid at node " +
                   cert.structure.nodes[violation->node]);
    return driver.finish(kNegative);
  }
  if (action == "compute") {
    auto measure = compute_measure(annotated, spec);
    if (!measure) {
      driver.verdict("no measure: structure is not a witness");
      return driver.finish(kNegative);
    }
    driver.verdict("measure computed");
    if (!out_path.empty()) {
      driver.output(out_path, serialize_certificate(game, spec, annotated, &*measure));
    }
    return driver.finish(kPositive);
  }
  if (!cert.measure) {
    throw Error(Error::Code::Validation, "certificate carries no measure to check");
  }
  if (auto violation = check_measure(annotated, spec, *cert.measure)) {
    driver.verdict("measure violation at edge " + cert.structure.nodes[violation->node] + " / " +
                   game.directions[violation->dir]);
    return driver.finish(kNegative);
  }
  driver.verdict("measure ok");
  return driver.finish(kPositive);
}

int run_retract(Driver& driver, const std::string& action, const std::string& game_path,
                const std::string& certificate_path, const std::string& map_path,
                const std::string& out_path) {
  ParsedGame parsed = load_game(driver, game_path);
  auto [game, spec] = materialize(parsed);
  CertificateFile cert =
      parse_certificate_text(game, spec, driver.read_input(certificate_path));
  if (!cert.labels) throw Error(Error::Code::Validation, "certificate carries no labels");
  AnnotatedStrategy annotated = attach_labels(cert.structure, cert.labels->mealy,
                                              cert.labels->wstate);

  if (action == "compact") {
    if (!cert.measure) {
      throw Error(Error::Code::Validation, "compaction needs a measure in the certificate");
    }
    CompactResult result = compact_all(annotated, game, spec, *cert.measure);
    driver.kv("nodes-before", std::to_string(result.stats.nodes_before));
    driver.kv("nodes-after", std::to_string(result.stats.nodes_after));
    driver.kv("classes-before", std::to_string(result.stats.classes_before));
    driver.kv("classes-after", std::to_string(result.stats.classes_after));
    driver.kv("folds", std::to_string(result.stats.folds));
    WitnessResult w = is_witness(result.annotated, spec);
    driver.verdict(w.accepting ? "compacted witness" : "compacted non-witness");
    if (!out_path.empty()) {
      driver.output(out_path,
                    serialize_certificate(game, spec, result.annotated, &result.measure));
    }
    return driver.finish(w.accepting ? kPositive : kNegative);
  }

  RetractionMap h = parse_retraction_text(cert.structure, driver.read_input(map_path));
  if (action == "check") {
    int code = kPositive;
    if (auto violation = check_retraction(annotated, game, spec, h)) {
      driver.kv("retraction-check", "violation: " + violation->detail);
      code = kNegative;
    } else {
      driver.kv("retraction-check", "ok");
    }
    if (cert.measure) {
      if (auto node = check_monotone(annotated, spec, *cert.measure, h)) {
        driver.kv("monotone-check", "violation at node " + cert.structure.nodes[*node]);
        code = kNegative;
      } else {
        driver.kv("monotone-check", "ok");
      }
    }
    driver.verdict(code == kPositive ? "retraction valid" : "retraction invalid");
    return driver.finish(code);
  }
  // apply
  if (!cert.measure) {
    throw Error(Error::Code::Validation, "applying a retraction needs a measure");
  }
  RetractResult result = retract(annotated, game, spec, *cert.measure, h);
  driver.kv("nodes-before", std::to_string(annotated.node_count()));
  driver.kv("nodes-after", std::to_string(result.annotated.node_count()));
  driver.verdict("retract applied");
  if (!out_path.empty()) {
    driver.output(out_path,
                  serialize_certificate(game, spec, result.annotated, &result.measure));
  }
  return driver.finish(kPositive);
}

int run_dstates(Driver& driver, const std::string& action, const std::string& game_path,
                const std::string& certificate_path, int depth, const std::string& strategy_path,
                const std::string& dot_path, long long budget) {
  ParsedGame parsed = load_game(driver, game_path);
  auto [game, spec] = materialize(parsed);
  if (action == "classify") {
    CertificateFile cert =
        parse_certificate_text(game, spec, driver.read_input(certificate_path));
    if (!cert.labels) throw Error(Error::Code::Validation, "certificate carries no labels");
    AnnotatedStrategy annotated = attach_labels(cert.structure, cert.labels->mealy,
                                                cert.labels->wstate);
    UniformityRelation uni = compute_uniformity(annotated.structure, game);
    auto dstates = compute_dstates(annotated, game, uni);
    ClassReport report = classify(annotated, game, dstates);
    driver.kv("dstates", std::to_string(dstates.size()));
    driver.kv("index", std::to_string(report.index()));
    driver.kv("max-dstate-size", std::to_string(report.max_dstate_size));
    driver.kv("max-class-size", std::to_string(report.max_class_size));
    for (int c = 0; c < report.index(); ++c) {
      driver.report << "class { id: " << c << " members: " << report.classes[c].size()
                    << " size: " << dstates[report.classes[c].front()].size() << " }\n";
    }
    if (!dot_path.empty()) {
      driver.output(dot_path, export_dot_quotient(game, dstates, report));
    }
    driver.verdict("classified");
    return driver.finish(kPositive);
  }
  // diagnose-growth
  GrowthOptions gopts;
  gopts.history_budget = budget;
  DecisionStructure s;
  if (!strategy_path.empty()) {
    s = parse_strategy_text(game, driver.read_input(strategy_path));
    gopts.strategy = &s;
  }
  auto table = diagnose_growth(game, spec, depth, gopts);
  for (const GrowthRow& row : table) {
    driver.report << "row { depth: " << row.depth << " histories: " << row.histories
                  << " dstates: " << row.dstates << " max-size: " << row.max_size;
    if (row.class_index >= 0) driver.report << " classes: " << row.class_index;
    driver.report << " }\n";
  }
  driver.verdict("growth table with " + std::to_string(table.size()) + " rows");
  return driver.finish(kPositive);
}

int emit_solution(Driver& driver, const GameSpec& game, const ParityTreeAutomaton& spec,
                  const SolveResult& result, const std::string& out_path,
                  const std::string& certificate_out) {
  if (result.status == SolveStatus::Winning) {
    driver.verdict("winning");
    if (!out_path.empty()) {
      driver.output(out_path, serialize_strategy(game, result.strategy.value()));
    }
    if (!certificate_out.empty() && result.certificate) {
      driver.output(certificate_out,
                    serialize_certificate(game, spec, result.certificate->annotated,
                                          &result.certificate->measure));
    }
    return driver.finish(kPositive);
  }
  if (result.status == SolveStatus::Losing) {
    driver.verdict("no winning strategy");
    return driver.finish(kNegative);
  }
  driver.verdict("unknown within memory bound " + std::to_string(result.exhausted_bound));
  return driver.finish(kExhausted);
}

int run_solve(Driver& driver, const std::string& kind, const std::string& game_path,
              const std::string& mode, int max_memory, int window_override,
              const std::string& out_path, const std::string& certificate_out) {
  ParsedGame parsed = load_game(driver, game_path);
  const ParityTreeAutomaton& spec = require_spec(parsed);
  if (kind == "parity") {
    ParityArena arena = build_product_arena(parsed.game, spec);
    ArenaSolution sol = solve_parity(arena);
    driver.kv("positions", std::to_string(arena.position_count()));
    driver.verdict(sol.initial_won(arena) ? "winning" : "no winning strategy");
    return driver.finish(sol.initial_won(arena) ? kPositive : kNegative);
  }
  if (kind == "one-player") {
    OnePlayerOptions opts;
    opts.mode = mode == "general" ? OnePlayerMode::General : OnePlayerMode::Observable;
    opts.max_memory = max_memory;
    SolveResult result = solve_one_player(parsed.game, spec, opts);
    return emit_solution(driver, parsed.game, spec, result, out_path, certificate_out);
  }
  // delay
  int window = window_override;
  if (window < 0) {
    if (!parsed.delay) {
      throw Error(Error::Code::NotDelayForm,
                  "game file is not in delay form; declare 'delay <k>' or pass --window");
    }
    window = *parsed.delay;
  }
  DelayExpansion expansion = expand_delay_game(parsed.game, spec, window);
  SolveResult result = solve_delay(parsed.game, spec, window);
  return emit_solution(driver, expansion.game, expansion.spec, result, out_path,
                       certificate_out);
}

int run_annotate(Driver& driver, const std::string& game_path, const std::string& strategy_path,
                 int depth, const std::string& out_path) {
  ParsedGame parsed = load_game(driver, game_path);
  auto [game, spec] = materialize(parsed);
  DecisionStructure s = parse_strategy_text(game, driver.read_input(strategy_path));
  AnnotatedStrategy annotated = annotate_tree(s, game, spec, depth);
  auto measure = compute_measure(annotated, spec);
  driver.kv("nodes", std::to_string(annotated.node_count()));
  driver.verdict("annotated to depth " + std::to_string(depth));
  if (!out_path.empty()) {
    driver.output(out_path, serialize_certificate(game, spec, annotated,
                                                  measure ? &*measure : nullptr));
  }
  return driver.finish(kPositive);
}

int run_oracle(Driver& driver, const std::string& game_path, int memory_bound, long long budget,
               const std::string& out_path) {
  ParsedGame parsed = load_game(driver, game_path);
  auto [game, spec_m] = materialize(parsed);
  const ParityTreeAutomaton* spec = &spec_m;
  OracleOptions opts;
  opts.memory_bound = memory_bound;
  opts.budget = budget;
  OracleOutcome outcome = brute_force_oracle(game, *spec, opts);
  driver.kv("candidates", std::to_string(outcome.candidates_tried));
  if (outcome.kind == OracleOutcome::Kind::Winner) {
    driver.verdict("winner found");
    if (!out_path.empty()) {
      driver.output(out_path, serialize_strategy(game, outcome.strategy.value()));
    }
    return driver.finish(kPositive);
  }
  if (outcome.kind == OracleOutcome::Kind::NoneWithinBound) {
    driver.verdict("no winner within memory bound " + std::to_string(memory_bound));
    return driver.finish(kNegative);
  }
  driver.verdict("budget exceeded after " + std::to_string(outcome.candidates_tried) +
                 " candidates");
  return driver.finish(kExhausted);
}

int run_gen(Driver& driver, const std::string& kind, uint64_t seed, const std::string& out_path) {
  Rng rng(seed);
  ParsedGame parsed;
  if (kind == "observable") {
    ObservableInstance instance = random_observable_instance(rng);
    parsed.game = instance.game;
    parsed.spec = instance.spec;
  } else {
    RandomGameParams gp;
    gp.players = kind == "two-player" ? 2 : 1;
    parsed.game = random_game(rng, gp);
    RandomSpecParams sp;
    parsed.spec = random_spec(rng, parsed.game, sp);
  }
  std::string text = serialize_game(parsed);
  if (out_path.empty()) {
    driver.report << text;
  } else {
    driver.output(out_path, text);
  }
  driver.verdict("generated");
  return driver.finish(kPositive);
}

int run_export(Driver& driver, const std::string& game_path,
               const std::string& certificate_path, const std::string& strategy_path,
               const std::string& out_path) {
  ParsedGame parsed = load_game(driver, game_path);
  auto [game, spec_m] = materialize(parsed);
  std::string dot;
  if (!certificate_path.empty()) {
    const ParityTreeAutomaton& spec = spec_m;
    CertificateFile cert =
        parse_certificate_text(game, spec, driver.read_input(certificate_path));
    if (cert.labels) {
      AnnotatedStrategy annotated = attach_labels(cert.structure, cert.labels->mealy,
                                                  cert.labels->wstate);
      dot = export_dot_annotated(game, spec, annotated,
                                 cert.measure ? &*cert.measure : nullptr);
    } else {
      UniformityRelation uni = compute_uniformity(cert.structure, game);
      dot = export_dot_strategy(game, cert.structure, &uni);
    }
  } else {
    DecisionStructure s = parse_strategy_text(game, driver.read_input(strategy_path));
    UniformityRelation uni = compute_uniformity(s, game);
    dot = export_dot_strategy(game, s, &uni);
  }
  driver.output(out_path, dot);
  driver.verdict("exported");
  return driver.finish(kPositive);
}

int dispatch(int argc, char** argv);

int run_replay(Driver& driver, const std::string& manifest_path) {
  RunManifest recorded = parse_manifest_text(read_file(manifest_path));
  // Re-execute the recorded command and compare produced outputs.
  std::vector<std::string> args = recorded.argv;
  std::vector<char*> argv_ptrs;
  std::string program = "gamefold";
  argv_ptrs.push_back(program.data());
  for (auto& a : args) argv_ptrs.push_back(a.data());
  dispatch(static_cast<int>(argv_ptrs.size()), argv_ptrs.data());
  bool identical = true;
  for (const auto& [path, digest] : recorded.outputs) {
    std::string now = sha256_hex(read_file(path));
    if (now != digest) {
      driver.kv("mismatch", path);
      identical = false;
    }
  }
  driver.verdict(identical ? "replay identical" : "replay diverged");
  return driver.finish(identical ? kPositive : kNegative);
}

int dispatch(int argc, char** argv) {
  CLI::App app{std::string(kVersion) +
               " - strategy verification and synthesis for synchronous games of imperfect "
               "information"};
  app.require_subcommand(1);

  Driver driver;
  std::string game_path, strategy_path, certificate_path, map_path, out_path, dot_path;
  std::string certificate_out, mode = "observable", action, manifest_arg;
  int depth = 4, max_memory = 6, memory_bound = 3, window = -1;
  long long budget = 2'000'000;
  uint64_t seed = 1;
  bool all_histories = false;

  app.add_option("--manifest", driver.manifest_path, "write a reproducibility manifest");
  app.add_flag("--human", driver.human, "human-oriented wording (default: structured report)");

  auto* validate_cmd = app.add_subcommand("validate", "check a game file");
  validate_cmd->add_option("game", game_path)->required();

  auto* verify_cmd = app.add_subcommand("verify", "check a strategy or certificate");
  verify_cmd->add_option("game", game_path)->required();
  verify_cmd->add_option("--strategy", strategy_path);
  verify_cmd->add_option("--certificate", certificate_path);
  verify_cmd->add_option("--dot", dot_path);
  verify_cmd->add_flag("--all-histories", all_histories,
                       "uniformity over all histories, not only followed ones");

  auto* measure_cmd = app.add_subcommand("measure", "compute or check a progress measure");
  measure_cmd->add_option("action", action)->required()->check(CLI::IsMember({"compute", "check"}));
  measure_cmd->add_option("game", game_path)->required();
  measure_cmd->add_option("--certificate", certificate_path)->required();
  measure_cmd->add_option("-o,--out", out_path);

  auto* retract_cmd = app.add_subcommand("retract", "check, apply or compact retractions");
  retract_cmd->add_option("action", action)
      ->required()
      ->check(CLI::IsMember({"check", "apply", "compact"}));
  retract_cmd->add_option("game", game_path)->required();
  retract_cmd->add_option("--certificate", certificate_path)->required();
  retract_cmd->add_option("--map", map_path);
  retract_cmd->add_option("-o,--out", out_path);

  auto* dstates_cmd = app.add_subcommand("dstates", "d-state reports");
  dstates_cmd->add_option("action", action)
      ->required()
      ->check(CLI::IsMember({"classify", "diagnose-growth"}));
  dstates_cmd->add_option("game", game_path)->required();
  dstates_cmd->add_option("--certificate", certificate_path);
  dstates_cmd->add_option("--strategy", strategy_path);
  dstates_cmd->add_option("--depth", depth);
  dstates_cmd->add_option("--dot", dot_path);
  dstates_cmd->add_option("--budget", budget);

  auto* solve_cmd = app.add_subcommand("solve", "decision procedures");
  solve_cmd->add_option("kind", action)
      ->required()
      ->check(CLI::IsMember({"one-player", "delay", "parity"}));
  solve_cmd->add_option("game", game_path)->required();
  solve_cmd->add_option("--mode", mode)->check(CLI::IsMember({"observable", "general"}));
  solve_cmd->add_option("--max-memory", max_memory);
  solve_cmd->add_option("--window", window);
  solve_cmd->add_option("-o,--out", out_path);
  solve_cmd->add_option("--certificate-out", certificate_out);

  auto* annotate_cmd =
      app.add_subcommand("annotate", "witness-annotate a strategy's truncated unravelling");
  annotate_cmd->add_option("game", game_path)->required();
  annotate_cmd->add_option("--strategy", strategy_path)->required();
  annotate_cmd->add_option("--depth", depth);
  annotate_cmd->add_option("-o,--out", out_path);

  auto* oracle_cmd = app.add_subcommand("oracle", "strategy enumeration oracle");
  oracle_cmd->add_option("game", game_path)->required();
  oracle_cmd->add_option("--memory-bound", memory_bound);
  oracle_cmd->add_option("--budget", budget);
  oracle_cmd->add_option("-o,--out", out_path);

  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("kind", action)
      ->required()
      ->check(CLI::IsMember({"one-player", "two-player", "observable"}));
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("-o,--out", out_path);

  auto* export_cmd = app.add_subcommand("export", "DOT export");
  export_cmd->add_option("game", game_path)->required();
  export_cmd->add_option("--strategy", strategy_path);
  export_cmd->add_option("--certificate", certificate_path);
  export_cmd->add_option("-o,--out", out_path)->required();

  auto* replay_cmd = app.add_subcommand("replay", "re-run a manifest and compare outputs");
  replay_cmd->add_option("manifest", manifest_arg)->required();

  auto* version_cmd = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPositive : kInputError;
  }

  // Keep the recorded command free of the manifest path so replays do not
  // rewrite the manifest they read.
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--manifest") {
      i++;
      continue;
    }
    driver.manifest.argv.push_back(arg);
  }

  try {
    if (*validate_cmd) return run_validate(driver, game_path);
    if (*verify_cmd) {
      if (strategy_path.empty() && certificate_path.empty()) {
        throw Error(Error::Code::Validation, "verify needs --strategy or --certificate");
      }
      return run_verify(driver, game_path, strategy_path, certificate_path, dot_path,
                        all_histories);
    }
    if (*measure_cmd) return run_measure(driver, action, game_path, certificate_path, out_path);
    if (*retract_cmd) {
      if (action != "compact" && map_path.empty()) {
        throw Error(Error::Code::Validation, "retract " + action + " needs --map");
      }
      return run_retract(driver, action, game_path, certificate_path, map_path, out_path);
    }
    if (*dstates_cmd) {
      return run_dstates(driver, action, game_path, certificate_path, depth, strategy_path,
                         dot_path, budget);
    }
    if (*solve_cmd) {
      return run_solve(driver, action, game_path, mode, max_memory, window, out_path,
                       certificate_out);
    }
    if (*annotate_cmd) {
      return run_annotate(driver, game_path, strategy_path, depth, out_path);
    }
    if (*oracle_cmd) return run_oracle(driver, game_path, memory_bound, budget, out_path);
    if (*gen_cmd) return run_gen(driver, action, seed, out_path);
    if (*export_cmd) {
      return run_export(driver, game_path, certificate_path, strategy_path, out_path);
    }
    if (*replay_cmd) return run_replay(driver, manifest_arg);
    if (*version_cmd) {
      std::cout << kVersion << "\n";
      return kPositive;
    }
  } catch (const Error& e) {
    std::cout << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Error::Code::BudgetExceeded:
        return kExhausted;
      case Error::Code::NoWitness:
        return kNegative;
      default:
        return kInputError;
    }
  }
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
