// File formats, DOT export, digests and run manifests. All emitters are
// deterministic: identical inputs produce byte-identical text.
#pragma once

#include <optional>

#include "gamefold/dstates.hpp"
#include "gamefold/progress.hpp"
#include "gamefold/retraction.hpp"

namespace gamefold {

struct ParsedGame {
  GameSpec game;
  std::optional<ParityTreeAutomaton> spec;
  std::optional<int> delay;  // delay-form games carry no observer sections
};

ParsedGame parse_game_text(const std::string& text);
ParsedGame parse_game_file(const std::string& path);
std::string serialize_game(const ParsedGame& parsed);

DecisionStructure parse_strategy_text(const GameSpec& game, const std::string& text);
DecisionStructure parse_strategy_file(const GameSpec& game, const std::string& path);
std::string serialize_strategy(const GameSpec& game, const DecisionStructure& s);

struct CertificateFile {
  DecisionStructure structure;
  std::optional<Annotation> labels;
  std::optional<ProgressMeasure> measure;
};

CertificateFile parse_certificate_text(const GameSpec& game, const ParityTreeAutomaton& spec,
                                       const std::string& text);
CertificateFile parse_certificate_file(const GameSpec& game, const ParityTreeAutomaton& spec,
                                       const std::string& path);
std::string serialize_certificate(const GameSpec& game, const ParityTreeAutomaton& spec,
                                  const AnnotatedStrategy& annotated,
                                  const ProgressMeasure* measure);

RetractionMap parse_retraction_text(const DecisionStructure& s, const std::string& text);
std::string serialize_retraction(const DecisionStructure& s, const RetractionMap& h);

std::string export_dot_strategy(const GameSpec& game, const DecisionStructure& s,
                                const UniformityRelation* uniformity);
std::string export_dot_annotated(const GameSpec& game, const ParityTreeAutomaton& spec,
                                 const AnnotatedStrategy& annotated,
                                 const ProgressMeasure* measure);
std::string export_dot_quotient(const GameSpec& game, const std::vector<DState>& dstates,
                                const ClassReport& classes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string sha256_hex(const std::string& data);

/// Reproducibility record for one CLI run.
struct RunManifest {
  std::string version;
  std::vector<std::string> argv;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
  std::vector<std::string> verdicts;
};

std::string serialize_manifest(const RunManifest& manifest);
RunManifest parse_manifest_text(const std::string& text);

}  // namespace gamefold
