#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "locind/alexander_spanier.hpp"
#include "locind/homology.hpp"
#include "locind/index_pairing.hpp"

namespace locind {

// Reports are built as ordered JSON with a fixed insertion order and a fixed
// number formatting, so identical inputs produce byte-identical files.
using Json = nlohmann::ordered_json;

// canonical emission: two-space indent, trailing newline
std::string dump_report(const Json& j);

// flatten scalar leaves to a two-line CSV (header + row); arrays of scalars
// are ';'-joined, nested object arrays stay JSON-only and are skipped
std::string csv_from_report(const Json& j);

// --- strict parsing ---------------------------------------------------------

Json parse_json_text(const std::string& text, const std::string& what);
Json load_json_file(const std::string& path);

// reject keys outside the allowed set (strict configs)
void check_fields(const Json& obj, const std::string& what,
                  std::initializer_list<const char*> allowed);

// exact values: integers, "p/q" strings; "inf" only where a Radius is read
BigRat bigrat_from_json(const Json& j, const std::string& what);
Rat rat_from_json(const Json& j, const std::string& what);
Radius radius_from_json(const Json& j, const std::string& what);

// {"kind":"circle","n":8} | {"kind":"simplicial","maximal_simplices":[[...]]}
// | {"kind":"point"}
SpacePtr space_from_json(const Json& j);

// {"coeffs": {"-1": "1/2", "0": 4}} with exponents as string keys
LaurentPoly symbol_from_json(const Json& j);

// {"kind":"toeplitz","K":8,"symbol":{...}}
OperatorModel model_from_json(const Json& j, ScalarKind kind);

// {"kind":"constant"} | {"kind":"explicit","entries":[{"tuple":[...],
// "value":...}]}, optional "epsilon" restricting to near-diagonal tuples
ASCochain<Rat> cochain_from_json(const Json& j, const SpacePtr& space, int q);

// --- report composers --------------------------------------------------------

Json space_json(const FinitePointSpace& space);
Json profile_report(const FinitePointSpace& space, const Radius& eps,
                    ScalarKind kind, const CohomologyProfile& p);
Json scan_report(const FinitePointSpace& space, ScalarKind kind,
                 const CohomologyScan& s);
Json homology_report(const std::string& algebra_label,
                     const HomologyOptions& opt, const HomologyResult& r);
Json local_experiment_report(const LocalHochschildReport& r);
Json index_report_json(const IndexReport& r);
Json pair_report_json(const PairReport& r);
Json cycle_report_json(const CycleCheckReport& r);
Json probe_report_json(const ProbeReport& r);
Json error_json(const Error& e);

}  // namespace locind
