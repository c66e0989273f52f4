#pragma once

// JSON and CSV forms of everything the CLI emits. Floating-point values are
// rounded to 12 significant digits so reruns produce identical bytes.

#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "freecairn/cairn.hpp"
#include "freecairn/hilbert.hpp"
#include "freecairn/interval_checks.hpp"
#include "freecairn/intervals.hpp"
#include "freecairn/measure.hpp"
#include "freecairn/repsplit.hpp"
#include "freecairn/spectral.hpp"

namespace freecairn {

using Json = nlohmann::ordered_json;

double round12(double x);

// Shortlex-sorted array of serialized words.
Json words_to_json(std::span<const Word> words);
std::vector<Word> words_from_json(const Json& j);

// {"rank", "translate", "elements"}; the empty interval has rank -1.
Json to_json(const Interval& I);
Interval interval_from_json(const IntervalSystem& sys, const Json& j);

// [[re, im], ...]
Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const IntervalReport& report);
Json to_json(const CairnReport& report);
Json to_json(const MeasureReport& report);
Json to_json(const AxiomReport& report);
Json to_json(const Decomposition& d, const RegularCertificate& cert);
Json to_json(const RegularCertificate& cert);
Json to_json(const DisplacementResult& r);
Json to_json(const KazhdanConstant& k);
Json to_json(std::span<const KestenRow> rows);

// n,dim,block_count,worst_orthogonality_residual
void write_levels_csv(std::ostream& out, const Decomposition& d);

}  // namespace freecairn
