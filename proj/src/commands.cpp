#include "jumploci/commands.hpp"

#include <random>
#include <sstream>

#include "jumploci/session.hpp"

namespace jumploci {
namespace {

CommandResult make_result(Json json, std::string text, int status) {
  CommandResult r;
  r.json = std::move(json);
  r.text = std::move(text);
  r.status = status;
  return r;
}

template <class Field>
uint64_t seed_of(const CommandRequest& req, const Session<Field>& s) {
  return req.seed.value_or(s.options.seed.value_or(0));
}

/// coker of the presentation, or H_0 = coker d_1 for an explicit complex.
template <class Field>
PolyMatrix<Field> presentation_of(const Session<Field>& s) {
  if (s.module.presentation) return *s.module.presentation;
  PolyMatrix<Field> P = s.module.differentials.front();
  P.setRowDegrees(bidegrees(0, s.module.baseDegrees));
  return P;
}

/// Presentation of M* = Ext^c_A(M, A), when the resolution has length c.
template <class Field>
std::optional<PolyMatrix<Field>> dual_presentation(const Session<Field>& s) {
  const auto& R = s.ring;
  FreeComplex<Field> F = s.module.presentation ? minimal_resolution_over_A(R, *s.module.presentation)
                                               : complex_of(R, s.module);
  auto dual = dualize_over_A(F, R.c());
  if (!dual.presentation || dual.presentation->cols() == 0) return std::nullopt;
  return dual.presentation;
}

template <class Field>
std::vector<typename Field::Scalar> parse_point(const RingData<Field>& R, const std::string& text) {
  std::vector<typename Field::Scalar> out;
  std::stringstream ss(text);
  std::string piece;
  int column = 1;
  while (std::getline(ss, piece, ',')) {
    auto p = parse_poly(*R.S, piece, 1, column);
    if (!p.is_constant()) throw ParseError("point coordinates must be constants", 1, column);
    out.push_back(p.is_zero() ? R.field().zero() : p.lead().coef);
    column += int(piece.size()) + 1;
  }
  if (out.size() != R.c())
    throw std::invalid_argument("point has " + std::to_string(out.size()) + " coordinates, expected " +
                                std::to_string(R.c()));
  return out;
}

template <class Field>
std::string point_text(const std::vector<typename Field::Scalar>& a) {
  std::string out;
  for (size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + coefficient_text(a[i]);
  return out;
}

template <class Field>
CommandResult compute(const Session<Field>& s, uint64_t seed) {
  auto rep = module_report(twisted_complex_for(s.ring, s.module), seed);
  rep.bassDegree = bass_degree(s.ring, s.module, seed);
  return make_result(to_json(rep), to_text(rep), 0);
}

template <class Field>
CommandResult dual(const Session<Field>& s, uint64_t seed) {
  JumpLociReport<Field> primal, star;
  auto d = duality_check(s.ring, s.module, seed, &primal, &star);
  primal.bassDegree = star.bettiDegree;
  primal.duality = d;
  return make_result(to_json(primal), to_text(primal), d.all_equal() ? 0 : 2);
}

template <class Field>
CommandResult betti(const Session<Field>& s, int n) {
  auto P = presentation_of(s);
  auto beta = minimal_resolution_over_B(s.ring, P, n).betti();
  beta.resize(size_t(n) + 1, 0);
  int window = std::min(int(beta.size()), std::max(8, int(beta.size()) / 2));
  Json j{{"n", n}, {"M", betti_json(beta, window)}, {"M*", nullptr}};
  if (auto Q = dual_presentation(s)) {
    auto dbeta = minimal_resolution_over_B(s.ring, *Q, n).betti();
    dbeta.resize(size_t(n) + 1, 0);
    j["M*"] = betti_json(dbeta, window);
  }
  std::string text;
  for (const char* key : {"M", "M*"}) {
    const Json& m = j[key];
    text += std::string(key) + (m.is_null() ? ": not available\n" : ":\n");
    if (m.is_null()) continue;
    text += "  betti  ";
    for (size_t b : m["betti"]) text += " " + std::to_string(b);
    text += "\n";
    const Json& q = m["quasi_polynomial"];
    if (q.is_null()) {
      text += "  no quasi-polynomial fit yet; increase --n\n";
    } else {
      text += "  even i: " + q["even"].get<std::string>() + "\n  odd i:  " + q["odd"].get<std::string>() +
              "\n  valid from i = " + std::to_string(q["valid_from"].get<int>()) + "\n";
    }
    text += "  betti degree " + (m["betti_degree"].is_null() ? std::string("none") : m["betti_degree"].get<std::string>()) + "\n";
  }
  return make_result(j, text, 0);
}

template <class Field>
CommandResult crk(const Session<Field>& s, const std::string& pointText) {
  auto a = parse_point(s.ring, pointText);
  auto X = twisted_complex_for(s.ring, s.module);
  size_t v = crk_at(X, std::span<const typename Field::Scalar>(a));
  Json j{{"point", point_text<Field>(a)}, {"crk", v}, {"crk_generic", crk_generic(X)}};
  return make_result(j, "crk at (" + point_text<Field>(a) + ") = " + std::to_string(v) + "\n", 0);
}

template <class Field>
CommandResult oracle(const Session<Field>& s, int count, uint64_t seed) {
  const auto& R = s.ring;
  auto P = presentation_of(s);
  auto X = twisted_complex_for(R, s.module);
  std::mt19937_64 rng(seed);
  Json rows = Json::array();
  std::string text;
  bool all = true;
  for (int k = 0; k < count; ++k) {
    std::vector<typename Field::Scalar> a;
    bool nonzero = false;
    while (!nonzero) {
      a.clear();
      for (size_t i = 0; i < R.c(); ++i) {
        a.push_back(R.field().random(rng));
        nonzero = nonzero || !is_zero(a.back());
      }
    }
    std::span<const typename Field::Scalar> pt(a);
    auto o = stable_betti_oracle(R, P, pt);
    size_t c = crk_at(X, pt);
    bool agree = o.value && *o.value == c;
    all = all && agree;
    rows.push_back(Json{{"point", point_text<Field>(a)},
                        {"oracle", detail::optional_json(o.value)},
                        {"truncation", o.truncation},
                        {"crk", c},
                        {"agree", agree}});
    text += "(" + point_text<Field>(a) + ")  oracle " + (o.value ? std::to_string(*o.value) : "unstable") + "  crk " +
            std::to_string(c) + (agree ? "" : "  MISMATCH") + "\n";
  }
  return make_result(Json{{"points", rows}, {"all_agree", all}}, text, all ? 0 : 2);
}

template <class Field>
CommandResult realize_chain(const Session<Field>& s, const std::string& chainText, uint64_t seed) {
  if (chainText.empty()) throw std::invalid_argument("realize needs a chain file (--chain)");
  auto spec = parse_chain(chainText, s.ring);
  auto re = realize(s.ring.S, s.ring.fdeg, spec.chain, spec.nu, seed);
  Json chain = Json::array();
  for (const auto& I : spec.chain) chain.push_back(I.to_strings());
  Json j{{"nu", spec.nu},
         {"chain", chain},
         {"plateau_ends", re.ends},
         {"verified", re.verified},
         {"report", to_json(re.report)}};
  std::string text = std::string("realization ") + (re.verified ? "verified" : "FAILED") + "\n" + to_text(re.report);
  return make_result(j, text, re.verified ? 0 : 2);
}

template <class Field>
CommandResult dispatch(const CommandRequest& req, const Session<Field>& s) {
  uint64_t seed = seed_of(req, s);
  const std::string& cmd = req.command;
  if (cmd == "compute") return compute(s, seed);
  if (cmd == "dual") return dual(s, seed);
  if (cmd == "betti") {
    int n = req.n.value_or(s.options.n.value_or(20));
    if (n < 1) throw std::invalid_argument("--n must be positive");
    return betti(s, n);
  }
  if (cmd == "crk") {
    if (req.point.empty()) throw std::invalid_argument("crk needs --point a1,..,ac");
    return crk(s, req.point);
  }
  if (cmd == "oracle") {
    if (req.points < 1) throw std::invalid_argument("--points must be positive");
    return oracle(s, req.points, seed);
  }
  if (cmd == "realize") return realize_chain(s, req.chain, seed);
  throw std::invalid_argument("unknown command '" + cmd + "'");
}

}  // namespace

CommandResult run_command(const CommandRequest& req) {
  AnySession s = parse_session(req.input);
  return std::visit(
      [&](const auto& x) {
        CommandResult r = dispatch(req, x);
        r.output = x.options.output;
        return r;
      },
      s);
}

std::string emit(const CommandResult& r, Format format) {
  if (format == Format::Text) return r.text;
  return r.json.dump(2) + "\n";
}

}  // namespace jumploci
