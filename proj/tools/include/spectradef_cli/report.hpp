#pragma once

#include <string>

#include "spectradef/deformation.hpp"
#include "spectradef/obstruction.hpp"
#include "spectradef/serialize.hpp"
#include "spectradef/spectral.hpp"

namespace spectradef::cli {

enum class Format { Text, Json };

/// JSON: sorted keys, two-space indent, trailing newline. Text: indented
/// key/value listing; objects holding "cells" render as p-by-q grids.
std::string emit_report(const Json& results, Format format);

Json model_summary(const Model& model);
/// {"label": "E_r", "r": r, "cells": {"p,q": dim}}
Json page_table_json(const SpectralSequence& ss, int r);
Json page_entry_json(const SpectralSequence& ss, int r, int p, int q);
Json degeneration_json(const DegenerationReport& report);
Json filtration_json(const FiltrationReport& report);
Json flag_json(const HypothesisFlag& flag);
Json kodaira_json(const Model& model, const KodairaReport& report);
Json cy_json(const CYReport& report);
Json quotient_grid(const SpectralSequence& ss, const std::string& label, bool bott_chern);
Json popovici_json(const SpectralSequence& ss);
Json obstruction_json(const Model& model, const ObstructionClass& c);

/// Human-readable form, e.g. "2i*phi1^phit2 - phi3".
std::string form_text(const Json& terms);

}  // namespace spectradef::cli
