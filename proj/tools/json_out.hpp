#pragma once

// JSON views of the library's reports.  Floats are rounded to 12
// significant digits so that output is byte-stable.

#include <nlohmann/json.hpp>

#include "sqdiff/chang.hpp"
#include "sqdiff/decomposition.hpp"
#include "sqdiff/energy.hpp"
#include "sqdiff/fourier.hpp"
#include "sqdiff/increment.hpp"
#include "sqdiff/spectrum.hpp"

namespace sqdiff::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "sqdiff/1";

Json num(double x);
Json document(const char* kind);  // {"schema": ..., "kind": kind}

Json to_json(const SquareWitness& w);
Json to_json(const EnergyReport& r);
Json to_json(const DecompositionReport& r);
Json to_json(const SpectrumReport& r);
Json to_json(const IncrementResult& r, bool with_elements = true);
Json to_json(const ManyRationalsBound& b);
Json to_json(const TrichotomyResult& r);
Json to_json(const IterationStep& s);
Json summary_json(const IterationLog& log);
Json to_json(const ChangReport& r);

}  // namespace sqdiff::cli
