#pragma once

#include "k3gw/qseries.hpp"
#include "k3gw/wseries.hpp"

#include <json.hpp>

namespace k3gw {

using Json = nlohmann::json;

Json to_json(const GQ& g);
GQ gq_from_json(const Json& j);
// Canonical QSeries encoding. Rows with poles carry a "den" object holding
// the nonzero exponents of (s-1), (s-i), (s+1), (s+i); their "terms" are the
// numerator. Pole-free rows are expanded and carry no "den".
Json to_json(const QSeries& a);
QSeries qseries_from_json(const Json& j);
Json to_json(const WSeries& a);

}  // namespace k3gw
