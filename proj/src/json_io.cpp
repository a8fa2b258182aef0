#include "locind/json_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace locind {

namespace {

std::string bigrat_str(const BigRat& r) { return r.get_str(); }

std::string radius_str(const Radius& r) {
  return r.infinite ? "inf" : bigrat_str(r.value);
}

Json int_array(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

Json long_array(const std::vector<long>& v) {
  Json a = Json::array();
  for (long x : v) a.push_back(x);
  return a;
}

// strings that mpq parsing would accept but we do not want (spaces, empty
// numerator, hex) are filtered up front
bool plausible_rational_literal(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) return false;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  return digits > 0 && i == s.size();
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_null()) return "";
  return j.dump();
}

bool is_scalar(const Json& j) {
  return j.is_string() || j.is_boolean() || j.is_number() || j.is_null();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array()) {
    std::string joined;
    for (const auto& el : j) {
      if (!is_scalar(el)) return;  // nested structure: JSON-only
      if (!joined.empty()) joined += ';';
      joined += scalar_text(el);
    }
    out.emplace_back(prefix, joined);
    return;
  }
  out.emplace_back(prefix, scalar_text(j));
}

Json support_block(const Radius& phi, const Radius& chain, bool compatible) {
  Json s;
  s["phi"] = radius_str(phi);
  s["chain"] = radius_str(chain);
  s["compatible"] = compatible;
  return s;
}

}  // namespace

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_from_report(const Json& j) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(j, "", cells);
  std::string header, row;
  for (const auto& [k, v] : cells) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += csv_escape(k);
    row += csv_escape(v);
  }
  return header + "\n" + row + "\n";
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail_validation("malformed JSON in " + what + ": " + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_validation("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

void check_fields(const Json& obj, const std::string& what,
                  std::initializer_list<const char*> allowed) {
  require(obj.is_object(), what + " must be a JSON object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (k == a) {
        known = true;
        break;
      }
    if (!known) fail_validation("unknown field '" + k + "' in " + what);
  }
}

BigRat bigrat_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return BigRat(j.get<long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!plausible_rational_literal(s))
      fail_validation(what + ": '" + s + "' is not an integer or \"p/q\"");
    BigRat r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
      fail_validation(what + ": '" + s + "' is not a valid rational");
    r.canonicalize();
    return r;
  }
  fail_validation(what +
                  " must be an integer or a \"p/q\" string (floats would "
                  "break exactness)");
}

Rat rat_from_json(const Json& j, const std::string& what) {
  return Rat(bigrat_from_json(j, what));
}

Radius radius_from_json(const Json& j, const std::string& what) {
  if (j.is_string() && j.get<std::string>() == "inf") return Radius::inf();
  BigRat r = bigrat_from_json(j, what);
  require(r >= 0, what + " must be nonnegative");
  return Radius::finite(r);
}

SpacePtr space_from_json(const Json& j) {
  require(j.is_object() && j.contains("kind"),
          "space config needs a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "circle") {
    check_fields(j, "circle space", {"kind", "n"});
    require(j.contains("n") && j.at("n").is_number_integer(),
            "circle space needs an integer \"n\"");
    return circle_space(j.at("n").get<int>());
  }
  if (kind == "simplicial") {
    check_fields(j, "simplicial space", {"kind", "maximal_simplices"});
    require(j.contains("maximal_simplices") &&
                j.at("maximal_simplices").is_array(),
            "simplicial space needs \"maximal_simplices\"");
    std::vector<std::vector<int>> maximal;
    for (const auto& simplex : j.at("maximal_simplices")) {
      require(simplex.is_array(), "each maximal simplex must be an array");
      std::vector<int> s;
      for (const auto& v : simplex) {
        require(v.is_number_integer(), "simplex vertices must be integers");
        s.push_back(v.get<int>());
      }
      maximal.push_back(std::move(s));
    }
    return simplicial_space(maximal);
  }
  if (kind == "point") {
    check_fields(j, "point space", {"kind"});
    return single_point_space();
  }
  fail_validation("unknown space kind '" + kind + "'");
}

LaurentPoly symbol_from_json(const Json& j) {
  check_fields(j, "symbol", {"coeffs"});
  require(j.contains("coeffs") && j.at("coeffs").is_object(),
          "symbol needs a \"coeffs\" object keyed by exponent");
  LaurentPoly p;
  for (const auto& [k, v] : j.at("coeffs").items()) {
    size_t used = 0;
    int power = 0;
    try {
      power = std::stoi(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size())
      fail_validation("symbol exponent '" + k + "' is not an integer");
    Rat c = rat_from_json(v, "symbol coefficient z^" + k);
    if (!c.is_zero()) p.coeffs[power] = c;
  }
  return p;
}

OperatorModel model_from_json(const Json& j, ScalarKind kind) {
  require(j.is_object() && j.contains("kind"),
          "model config needs a \"kind\" field");
  std::string mk = j.at("kind").get<std::string>();
  require(mk == "toeplitz", "unknown model kind '" + mk + "'");
  check_fields(j, "toeplitz model", {"kind", "K", "symbol"});
  int K = 8;
  if (j.contains("K")) {
    require(j.at("K").is_number_integer(), "model \"K\" must be an integer");
    K = j.at("K").get<int>();
  }
  require(j.contains("symbol"), "toeplitz model needs a \"symbol\"");
  return make_operator_model(symbol_from_json(j.at("symbol")), K, kind);
}

ASCochain<Rat> cochain_from_json(const Json& j, const SpacePtr& space, int q) {
  require(j.is_object() && j.contains("kind"),
          "phi config needs a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  ASCochain<Rat> phi;
  if (kind == "constant") {
    check_fields(j, "constant phi", {"kind", "epsilon"});
    phi = constant_cochain(*space, q);
  } else if (kind == "explicit") {
    check_fields(j, "explicit phi", {"kind", "entries", "epsilon"});
    require(j.contains("entries") && j.at("entries").is_array(),
            "explicit phi needs an \"entries\" array");
    phi.degree = q;
    for (const auto& entry : j.at("entries")) {
      check_fields(entry, "phi entry", {"tuple", "value"});
      require(entry.contains("tuple") && entry.at("tuple").is_array() &&
                  entry.contains("value"),
              "phi entries need \"tuple\" and \"value\"");
      std::vector<int> tuple;
      for (const auto& v : entry.at("tuple")) {
        require(v.is_number_integer(), "phi tuple entries must be integers");
        tuple.push_back(v.get<int>());
      }
      require(int(tuple.size()) == q + 1,
              "phi tuple arity must be q + 1 = " + std::to_string(q + 1));
      for (int x : tuple)
        require(x >= 0 && x < space->n_points,
                "phi tuple point out of range");
      phi.add(tuple, rat_from_json(entry.at("value"), "phi value"));
    }
    phi.prune_zeros();
  } else {
    fail_validation("unknown phi kind '" + kind + "'");
  }
  if (j.contains("epsilon")) {
    Radius eps = radius_from_json(j.at("epsilon"), "phi epsilon");
    for (auto it = phi.coeffs.begin(); it != phi.coeffs.end();)
      it = tuple_allowed(*space, it->first, eps) ? ++it : phi.coeffs.erase(it);
  }
  return phi;
}

Json space_json(const FinitePointSpace& space) {
  Json s;
  s["label"] = space.label;
  s["n_points"] = space.n_points;
  s["unit"] = space.unit;
  return s;
}

Json profile_report(const FinitePointSpace& space, const Radius& eps,
                    ScalarKind kind, const CohomologyProfile& p) {
  Json j;
  j["report"] = "as-cohomology";
  j["space"] = space_json(space);
  j["scalars"] = scalar_kind_name(kind);
  j["epsilon"] = radius_str(eps);
  j["dims"] = int_array(p.dims);
  j["ranks"] = int_array(p.ranks);
  return j;
}

Json scan_report(const FinitePointSpace& space, ScalarKind kind,
                 const CohomologyScan& s) {
  Json j;
  j["report"] = "as-cohomology-scan";
  j["space"] = space_json(space);
  j["scalars"] = scalar_kind_name(kind);
  Json stages = Json::array();
  for (const auto& st : s.stages) {
    Json stage;
    stage["epsilon"] = bigrat_str(st.eps);
    stage["dims"] = int_array(st.profile.dims);
    stage["ranks"] = int_array(st.profile.ranks);
    stages.push_back(std::move(stage));
  }
  j["stages"] = std::move(stages);
  j["stabilized"] = s.stabilized;
  j["final_ranks"] = int_array(s.final_ranks);
  return j;
}

Json homology_report(const std::string& algebra_label,
                     const HomologyOptions& opt, const HomologyResult& r) {
  Json j;
  j["report"] = "cyclic-homology";
  j["algebra"] = algebra_label;
  j["variant"] = homology_variant_name(r.variant);
  j["scalars"] = scalar_kind_name(opt.kind);
  j["degree_lo"] = r.degree_lo;
  j["degree_hi"] = r.degree_hi;
  if (opt.epsilon) j["epsilon"] = radius_str(*opt.epsilon);
  j["support_mode"] = opt.support_mode == SupportMode::sum ? "sum" : "max";
  j["separable_localization"] = opt.sring_side.has_value();
  j["dims"] = long_array(r.dims);
  j["ranks"] = int_array(r.ranks);
  return j;
}

Json local_experiment_report(const LocalHochschildReport& r) {
  Json j;
  j["report"] = "local-hochschild-experiment";
  j["space"] = r.space_label;
  j["max_degree"] = r.max_degree;
  j["support_mode"] = r.mode == SupportMode::sum ? "sum" : "max";
  Json grid = Json::array();
  for (const auto& g : r.grid) grid.push_back(bigrat_str(g));
  j["grid"] = std::move(grid);
  Json ranks_at = Json::array();
  for (const auto& row : r.ranks_at) ranks_at.push_back(int_array(row));
  j["ranks_at"] = std::move(ranks_at);
  j["selected_epsilon"] = bigrat_str(r.selected_eps);
  j["selected_ranks"] = int_array(r.selected_ranks);
  j["oracle_ranks"] = int_array(r.oracle_ranks);
  j["matches_oracle"] = r.matches_oracle;
  return j;
}

Json index_report_json(const IndexReport& r) {
  Json j;
  j["report"] = "index-class";
  j["model"] = r.model_descriptor;
  j["scalars"] = scalar_kind_name(r.kind);
  j["q"] = r.q;
  j["tau"] = r.tau_value;
  j["residue_trace"] = r.residue_trace_value;
  j["oracle_index"] = r.oracle_index;
  j["classical_index"] = r.classical_index;
  Json cmp;
  cmp["tau_vs_residue_trace"] =
      r.tau_equals_residue_trace ? "equal" : "different";
  cmp["tau_vs_oracle"] = r.tau_equals_oracle ? "equal" : "different";
  j["comparisons"] = std::move(cmp);
  j["phi_was_antisymmetrized"] = r.phi_was_antisymmetrized;
  j["support"] =
      support_block(r.phi_support, r.chain_support, r.support_compatible);
  Json conv;
  conv["measure"] = r.measure;
  conv["support_mode"] = r.support_mode;
  conv["trace"] = r.trace_convention;
  conv["index_sign"] = r.index_sign_convention;
  j["conventions"] = std::move(conv);
  return j;
}

Json pair_report_json(const PairReport& r) {
  Json j;
  j["report"] = "pair";
  j["model"] = r.model_descriptor;
  j["scalars"] = scalar_kind_name(r.kind);
  j["q"] = r.q;
  j["tau"] = r.tau_value;
  j["support"] =
      support_block(r.phi_support, r.chain_support, r.support_compatible);
  Json conv;
  conv["measure"] = r.measure;
  conv["support_mode"] = r.support_mode;
  j["conventions"] = std::move(conv);
  return j;
}

Json cycle_report_json(const CycleCheckReport& r) {
  Json j;
  j["report"] = "cycle-check";
  j["q"] = r.q;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["exact_zero"] = r.exact_zero;
  j["max_abs"] = r.max_abs;
  return j;
}

Json probe_report_json(const ProbeReport& r) {
  Json j;
  j["report"] = "conjecture-probe";
  j["label"] = r.label;
  j["model"] = r.model_descriptor;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json rj;
    rj["q"] = row.q;
    rj["sigma_winding"] = row.sigma_winding;
    rj["sigma_chain"] = row.sigma_chain;
    rj["residue_tau"] = row.residue_tau;
    rj["residue_chain"] = row.residue_chain;
    rj["q0_equal"] = row.q0_equal;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json error_json(const Error& e) {
  Json j;
  Json inner;
  inner["kind"] = e.kind_name();
  inner["message"] = e.what();
  j["error"] = std::move(inner);
  return j;
}

}  // namespace locind
