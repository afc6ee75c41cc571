#pragma once

#include <optional>
#include <string>

#include "iwa/oracle.hpp"
#include "iwa/tower.hpp"

namespace iwa::textio {

/// Canonical text form of a series: terms in graded-lex order, each written
/// as c or c*X1^a1*X2^a2 with the reduced residue c; the zero series is "0".
std::string series_to_string(const PowerSeriesElement &f);

/// Canonical text form of a group-ring entry: "[g1,g2](series) + ..." for a
/// nontrivial group, plain series text otherwise.
std::string entry_to_string(const GroupRingElement &a);

PowerSeriesElement parse_series(const std::string &text, const CtxPtr &ctx,
                                int level);
GroupRingElement parse_entry(const std::string &text, const CtxPtr &ctx,
                             int level, const AbelianGroupSpec &group);

/// A parsed job file: context plus at most one payload block.
struct ParsedJob {
  int schema = 1;
  CtxPtr ctx;
  AbelianGroupSpec group;
  std::optional<Presentation> presentation;
  std::optional<Tower> tower;
  std::optional<int> ideal_level;
  std::vector<PowerSeriesElement> ideal_gens;
};

/// Parses the line-oriented job format. Precision overrides (N, D) replace
/// the context block values before any entry is read.
ParsedJob parse_job(const std::string &text,
                    std::optional<std::pair<int, int>> precision_override = std::nullopt);

std::string write_presentation_job(const Presentation &P);
std::string write_tower_job(const Tower &T);
std::string write_ideal_job(const CtxPtr &ctx, const AbelianGroupSpec &group,
                            int level, const std::vector<PowerSeriesElement> &gens);

/// Report payload rendering: machine form is JSON (stable key order, two
/// space indent, trailing newline); the human form is an indented key/value
/// listing derived from the same data.
std::string render_human(const std::string &json_text);

} // namespace iwa::textio
