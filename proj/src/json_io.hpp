#pragma once

// JSON readers for system, roof and measure specifications; internal.

#include <memory>
#include <string>

#include "json.hpp"
#include "symflow/measure.hpp"
#include "symflow/suspension.hpp"

namespace symflow::io {

using Json = nlohmann::json;

Rational rationalFrom(const Json& j);
// {"a": "1/2", "b": "1/3"} is a + b sqrt2; strings and integers are rational
QuadraticReal quadraticFrom(const Json& j);
Json quadraticTo(const QuadraticReal& x);
Word wordFrom(const Json& j);

Subshift subshiftFrom(const Json& j);
Roof roofFrom(const Json& j, std::size_t alphabet);
bool isFlowSpec(const Json& j);
SuspensionFlow flowFrom(const Json& j);
std::shared_ptr<const MarkovMeasure> measureFrom(const Json& j);

}  // namespace symflow::io
