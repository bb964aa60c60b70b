#pragma once

// Format tags of the serialized documents.

namespace hahn {

inline constexpr const char* kPlanFormat = "hahncert-plan/1";
inline constexpr const char* kCertificateFormat = "hahncert-certificate/1";
inline constexpr const char* kTraceFormat = "hahncert-trace/1";

}  // namespace hahn
