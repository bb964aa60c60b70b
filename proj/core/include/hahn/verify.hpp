#pragma once

// Independent checker for plan transcripts, certificates and division traces.
// It re-derives every constraint from the document using only exact
// rationals and the series engine; none of the builder or division code is
// involved.

#include <string>
#include <string_view>
#include <vector>

namespace hahn {

struct Finding {
  /// "instance", "stage 7", "step 3", "certificate 2", ...
  std::string location;
  std::string message;
};

struct VerifyReport {
  std::string format;
  std::size_t checks = 0;
  std::vector<Finding> findings;

  bool ok() const { return findings.empty(); }
};

/// Throws Error(Format) for empty or malformed documents.
VerifyReport verifyDocument(std::string_view json);

}  // namespace hahn
