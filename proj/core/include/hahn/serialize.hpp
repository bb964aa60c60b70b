#pragma once

// JSON documents emitted by the tool: plan transcripts, adapted-element
// certificates and division traces. Rationals are strings "num/den"; series
// use the text form of toText(). Output is deterministic byte for byte.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hahn/division.hpp"
#include "hahn/formats.hpp"

namespace hahn {

/// FNV-1a 64-bit digest, hex encoded, used to fingerprint target files.
std::string fnv1a64(std::string_view data);

/// Instance header, stage rows and the builder's own verification summary
/// (one entry per certificate).
std::string planTranscript(const AlphaPlan& plan, const std::vector<AdaptedCertificate>& certs);

std::string certificateDocument(const AlphaPlan& plan, const AdaptedCertificate& cert);

struct TraceHeader {
  std::string targetText;
  unsigned long shift = 0;
};

std::string traceDocument(const AlphaPlan& plan, const DivisionTrace& trace,
                          const TraceHeader& header);

}  // namespace hahn
