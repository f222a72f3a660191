#pragma once
#include <stdexcept>
#include <string>

namespace dcqe {

/// A configuration value is outside its documented range. The message names
/// the offending field.
struct InvalidConfigError : std::runtime_error {
  explicit InvalidConfigError(const std::string &what) : std::runtime_error(what) {}
};

/// Config text could not be parsed. Carries the 1-based line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string &reason)
      : std::runtime_error("line " + std::to_string(line_) + ": " + reason), line(line_) {}
};

/// A simulation was requested from a plan whose timing-ordering check failed
/// or was never run.
struct OrderingNotValidatedError : std::runtime_error {
  OrderingNotValidatedError()
      : std::runtime_error("plan failed the choice-timing ordering check; simulation refused") {}
};

/// Detection routing was requested on a trace whose temporal bins have not
/// been assigned yet.
struct BinsNotAssignedError : std::runtime_error {
  BinsNotAssignedError()
      : std::runtime_error("trace has no temporal-bin assignment; run assign_bins first") {}
};

/// The two hypothesis models predict the same mean count, so no observation
/// can discriminate between them.
struct DegeneratePredictionsError : std::runtime_error {
  DegeneratePredictionsError()
      : std::runtime_error("model predictions coincide; discrimination impossible") {}
};

/// Aggregation was requested over an empty result list.
struct EmptyCampaignError : std::runtime_error {
  EmptyCampaignError() : std::runtime_error("no unit results to aggregate") {}
};

/// Aggregation inputs disagree on the model or choice they were produced under.
struct MixedProvenanceError : std::runtime_error {
  explicit MixedProvenanceError(const std::string &what) : std::runtime_error(what) {}
};

/// An output sink could not be written.
struct IoError : std::runtime_error {
  explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace dcqe
