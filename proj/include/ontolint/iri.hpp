#pragma once
// RFC 3986/3987 absolute-IRI syntax checking and reference resolution.
// Validation is purely syntactic: no normalization of case or
// percent-encoding is performed, IRIs compare as exact strings.

#include <optional>
#include <string>
#include <string_view>

namespace ontolint {

// A rejected IRI: byte index of the first offending character and the
// grammar rule that refused it.
struct IriViolation {
  std::size_t index = 0;
  std::string rule;
};

// nullopt when `s` parses as an absolute IRI reference (scheme required).
std::optional<IriViolation> validate_iri(std::string_view s);

// RFC 3986 section 5 reference resolution (merge + dot-segment removal).
// An empty base returns the reference unchanged.
std::string resolve_iri(std::string_view base, std::string_view reference);

}  // namespace ontolint
