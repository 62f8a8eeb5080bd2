// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_REPORT_HPP
#define FORMBOUND_REPORT_HPP

#include <string>

#include <json.hpp>

#include "formbound/capacity.hpp"
#include "formbound/form_norm.hpp"
#include "formbound/hodge.hpp"
#include "formbound/measure.hpp"
#include "formbound/oscillation.hpp"
#include "formbound/verdict.hpp"

namespace formbound
{

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchemaVersion = "1.0.0";

/// Non-finite values become null.
Json number(double x);

Json to_json(const Grid &g);
Json to_json(const Witness &w);
Json to_json(const Cube &c);
Json to_json(const MeasureReport &r);
Json to_json(const BmoReport &r);
Json to_json(const FormEstimate &e);
Json to_json(const NonlinearConstant &c);
Json to_json(const CapacityResult &r);
Json to_json(const GaugeCheck &g);
Json to_json(const DecayProfile &p);
Json to_json(const VerdictConfig &c);
Json to_json(const Verdict &v);
/// Sizes of the pieces; the fields themselves are not embedded.
Json to_json(const DecompositionResult &d);

/// Compact JSON with every floating-point number printed with 17 significant digits.
std::string serialize(const Json &j);

}  // namespace formbound

#endif  // FORMBOUND_REPORT_HPP
