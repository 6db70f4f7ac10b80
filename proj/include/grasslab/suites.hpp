#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grasslab/chow.hpp"
#include "grasslab/io.hpp"

namespace grasslab {

/// One checked property with the number of instances it was evaluated on.
struct ReportLine {
  ReportLine(std::string id_, std::string claim_) : id(std::move(id_)), claim(std::move(claim_)) {}

  std::string id;
  std::string claim;
  bool passed = true;
  std::size_t instances = 0;
  std::string detail;
  double millis = 0;
};

struct Report {
  Report() = default;
  explicit Report(std::string title_) : title(std::move(title_)) {}

  std::string title;
  std::vector<ReportLine> lines;

  bool passed() const;
  /// Timing is left out unless asked for, so reports stay byte-stable.
  Json to_json(bool timing = false) const;
  std::string to_text(bool timing = false) const;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Extra geometry added to the corpora of the space-level checks.
  std::optional<Geometry> geometry;
  /// Level used for the extra geometry and for the base-subset checks on it.
  int k = 1;
  FramePolicy frames;
};

/// Single-geometry checks behind `check axioms|exchange|bases|projective`.
Report check_axioms(const LinearSpace& space);
Report check_exchange_report(const LinearSpace& space);
Report check_bases(const LinearSpace& space);
Report check_projective(const LinearSpace& space);
/// Base-subset calculus on one projective geometry at level k.
Report check_baseset_lemmas(const PGPtr& pg, int k, const FramePolicy& frames);

/// One line per listed property of each module, in module order.
Report suite_linspace(const SuiteOptions& options);
Report suite_projspace(const SuiteOptions& options);
Report suite_grassmann(const SuiteOptions& options);
Report suite_baseset(const SuiteOptions& options);
Report suite_chow(const SuiteOptions& options);
Report suite_gallery(const SuiteOptions& options);
/// All six suites concatenated.
Report check_all(const SuiteOptions& options);

}  // namespace grasslab
