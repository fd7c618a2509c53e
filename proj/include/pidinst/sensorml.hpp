#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pidinst/pid.hpp"

namespace pidinst::sensorml {

/// Label of the identifier term that carries the instrument PID inside a
/// sensor description.
inline constexpr std::string_view pid_term_label = "Instrument persistent identifier";

enum class conflict_policy { fail, replace };

/// Adds an identifier/Term block carrying the PID's resolver URL to the
/// document's identifier list. Idempotent: embedding the same PID again
/// returns the document byte-for-byte unchanged. A term with the same
/// label but a different value raises conflicting_identifier_error
/// unless policy is replace. Edits are splices into the original text;
/// untouched bytes stay untouched.
///
/// Throws malformed_document_error when the document does not parse or
/// has no identifier-list element.
std::string embed_identifier(std::string_view document, const pid& instrument_pid,
                             conflict_policy policy = conflict_policy::fail,
                             std::string_view resolver_base = default_handle_resolver);

/// Recovers the instrument PID from the identifier term, stripping the
/// resolver URL down to the bare identifier. nullopt when the document
/// carries no such term. Throws malformed_document_error.
std::optional<pid> extract_identifier(std::string_view document);

}  // namespace pidinst::sensorml
