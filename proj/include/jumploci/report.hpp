#pragma once

// JSON and plain-text renderings of jump-loci reports.

#include <json.hpp>

#include <optional>
#include <string>

#include "jumploci/jumploci.hpp"
#include "jumploci/quasipoly.hpp"
#include "jumploci/resolution.hpp"

namespace jumploci {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline std::string optional_text(const std::optional<long long>& v) { return v ? std::to_string(*v) : "none"; }

}  // namespace detail

inline Json to_json(const DualityReport& d) {
  bool all = std::all_of(d.perIndexEqual.begin(), d.perIndexEqual.end(), [](bool b) { return b; });
  return Json{{"per_index_equal", all}, {"bdeg_equal", d.bdegEqual}};
}

/// Ideals print as generator lists in the polynomial text syntax: [] for the
/// zero ideal and ["1"] for the unit ideal.
template <class Field>
Json to_json(const JumpLociReport<Field>& r) {
  Json loci = Json::array();
  for (const auto& p : r.loci) {
    loci.push_back(Json{{"i_from", p.from},
                        {"i_to", detail::optional_json(p.to)},
                        {"ideal", p.ideal},
                        {"dim", p.dim}});
  }
  return Json{{"rank", r.rank},
              {"jump_numbers", r.jumpNumbers},
              {"loci", loci},
              {"complexity", r.complexity},
              {"betti_degree", detail::optional_json(r.bettiDegree)},
              {"bass_degree", detail::optional_json(r.bassDegree)},
              {"duality", r.duality ? to_json(*r.duality) : Json(nullptr)}};
}

template <class Field>
std::string to_text(const JumpLociReport<Field>& r) {
  std::string out;
  out += "rank            " + std::to_string(r.rank) + "\n";
  out += "jump numbers   ";
  for (int j : r.jumpNumbers) out += " " + std::to_string(j);
  out += "\ncomplexity      " + std::to_string(r.complexity) + "\n";
  out += "betti degree    " + detail::optional_text(r.bettiDegree) + "\n";
  out += "bass degree     " + detail::optional_text(r.bassDegree) + "\n";
  for (const auto& p : r.loci) {
    std::string range = std::to_string(p.from) + ".." + (p.to ? std::to_string(*p.to) : "");
    std::string ideal = "(";
    for (size_t k = 0; k < p.ideal.size(); ++k) ideal += (k ? ", " : "") + p.ideal[k];
    ideal += ")";
    out += "  V^i, i in " + range + ": dim " + std::to_string(p.dim) + "  " + ideal + "\n";
  }
  if (r.duality) {
    Json d = to_json(*r.duality);
    out += "duality         per-index " + std::string(d["per_index_equal"] ? "equal" : "DIFFERENT") + ", bdeg " +
           (r.duality->bdegEqual ? "equal" : "DIFFERENT") + "\n";
  }
  return out;
}

inline Json to_json(const QuasiPoly& q) {
  return Json{{"even", q.even.to_string()}, {"odd", q.odd.to_string()}, {"valid_from", q.validFrom}};
}

/// Betti sequence with its quasi-polynomial fit and the Betti degree read
/// off the leading coefficient.
inline Json betti_json(const std::vector<size_t>& beta, int window) {
  auto q = fit_quasi_polynomial(beta, window);
  Json bdeg = nullptr;
  if (q) {
    auto b = betti_degree_of(*q);
    if (b) bdeg = b->get_str();
  }
  return Json{{"betti", beta}, {"quasi_polynomial", q ? to_json(*q) : Json(nullptr)}, {"betti_degree", bdeg}};
}

}  // namespace jumploci
