#pragma once

#include "snowball/strategy.hpp"
#include "snowball/trace.hpp"

namespace snowball {

// Earliest event naming id. Throws NotInTrace.
const DiscoveryEvent& first_discovery(const SearchTrace& trace, const ArticleId& id);

// Recomputes what another strategy would have found, using only the
// (source, direction, target) instances and screening records of a full
// S1 trace. Because S1 examines every included article in both directions,
// its log holds every neighbourhood any other strategy could visit.
// Throws TraceNotFull when the trace is not from S1 or lacks a needed record.
StrategyResult project(const SearchTrace& full_trace, StrategyId strategy);

// Included/borderline sets and effort of the trace's own run. Iterations are
// not reconstructed.
StrategyResult summarize(const SearchTrace& trace);

}  // namespace snowball
