#pragma once

// JSON file formats for families, vector sets, and certificates. Every
// rational travels as its canonical "num/den" string, so a save/load cycle
// is bit-exact and two runs with the same inputs produce byte-identical
// files (object keys are emitted sorted, arrays keep construction order,
// nothing volatile is written).

#include "adlab/extraction.hpp"

#include <string>

namespace adlab {

// Families. Branch files are revalidated through the family builder on load;
// staged files are checked structurally (deep audits live in the check
// command). Loading never trusts redundant fields: counts are derived.
std::string family_to_json(const ADFamily& fam);
ADFamily family_from_json(const std::string& text);

// Vector sets embed their family so a single file is self-contained.
// Canonical vectors are rebuilt through the canonicalizing constructor;
// normalized vectors keep their stored scale enclosure (certificate
// verification re-derives it from the base when it matters).
std::string vector_set_to_json(const VectorSet& vs);
VectorSet vector_set_from_json(const std::string& text);

// Certificates round-trip structurally; semantic checking is the verifier's
// job, so a tampered file loads fine and then fails verification.
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

// Whole-file helpers; failures surface as InputError (exit code 2 at the CLI).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace adlab
