#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "jnsharp/decomposition.hpp"
#include "jnsharp/enclosure.hpp"
#include "jnsharp/oscillation.hpp"
#include "jnsharp/step_function.hpp"

namespace jnsharp {

using Json = nlohmann::ordered_json;

/// {"domain": {"a": "0", "b": "1"}, "breakpoints": [...], "values": [...]}
/// with rational strings. Throws ParseError on malformed input, including
/// step-function constraint violations.
StepFunction step_function_from_json(const Json& j);
StepFunction parse_step_function(const std::string& text);
StepFunction load_step_function(const std::filesystem::path& path);

Json to_json(const StepFunction& f);
/// Two-space indented, trailing newline. This is the on-disk format.
std::string dump_step_function(const StepFunction& f);

/// ["a", "b"]
Json to_json(const Interval& I);
/// [["a", "b"], ...]
Json to_json(const IntervalUnion& u);
/// {"lo", "hi", "bits"} with endpoints rounded outward to enough digits to
/// pin down the binary value.
Json to_json(const Enclosure& e);
Json to_json(const BmoEnclosure& n, int bits);
/// Parameters, complete flag and one entry per depth with the stopping
/// intervals and the E/F/G sets.
Json to_json(const DecompositionLayers& layers);

}  // namespace jnsharp
