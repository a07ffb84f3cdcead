#pragma once

#include <iosfwd>
#include <string>

#include "morita/skeletal.hpp"
#include "morita/vecg.hpp"

namespace morita {

inline constexpr int kFormatVersion = 1;

/// "a,b,c,d|alpha,e,beta|mu,f,nu" with 1-based multiplicity indices.
std::string format_key(const FKey& key);
/// Inverse of format_key; ParseError on malformed keys.
FKey parse_key(const std::string& text);

/// Canonical JSON text: keys in a fixed order, F entries sorted by FKey,
/// doubles in shortest round-trip form. Saving what was loaded reproduces
/// the same bytes.
std::string save_skeletal(const BimoduleData& data);
/// Module-only data (no category_d, f2..f4).
std::string save_skeletal(const ModuleData& mod);

/// ParseError (with line and column for malformed JSON) or InvalidInput for
/// schema violations; the result has finalize() applied.
BimoduleData load_skeletal(const std::string& text);
BimoduleData load_skeletal_file(const std::string& path);

/// {"format_version": 1, "group": {"name": ..., "table": [[...], ...]}, "cocycle": [[[re, im], ...], ...]}
/// "cocycle" is optional in group files; cocycle files carry only "cocycle".
FiniteGroup load_group(const std::string& text);
Cocycle load_cocycle(const FiniteGroup& g, const std::string& text);
std::string save_group(const FiniteGroup& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace morita
