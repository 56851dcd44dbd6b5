// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// JSON records emitted by the command-line front end. Keys appear in the
// order the record types declare their fields.

#pragma once

#include <json.hpp>

#include "ghzcert/bell.hpp"
#include "ghzcert/certify.hpp"
#include "ghzcert/ingest.hpp"
#include "ghzcert/protocol_sim.hpp"
#include "ghzcert/selftest.hpp"

namespace ghzcert {

using OrderedJson = nlohmann::ordered_json;

OrderedJson functional_to_json(const BellFunctional& f);
OrderedJson point_to_json(const JordanPoint& p);
OrderedJson bound_to_json(Operator op, const BoundSearchResult& r);
OrderedJson published_bound_to_json(Operator op);
OrderedJson report_to_json(const CertificationReport& r);
OrderedJson round_to_json(const RoundRecord& r);
OrderedJson protocol_to_json(const ProtocolRun& run, std::int64_t nc);
OrderedJson replay_to_json(const ReplayResult& r);

}  // namespace ghzcert
