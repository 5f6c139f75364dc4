#include "resolvekit/limits.hpp"

#include <numeric>

#include "resolvekit/degrees.hpp"
#include "resolvekit/error.hpp"
#include "resolvekit/textile.hpp"

namespace resolvekit {

namespace {

void offer(LimitEstimate& est, bool first, const ExtInt& value, int s) {
  if (first) {
    est.minus_infinity = !value;
    est.numerator = value.value_or(0);
    est.denominator = s;
    est.power = s;
    return;
  }
  if (!value || est.minus_infinity) return;
  if (static_cast<long long>(*value) * est.denominator > static_cast<long long>(est.numerator) * s) {
    est.numerator = *value;
    est.denominator = s;
    est.power = s;
  }
}

void reduce(LimitEstimate& est) {
  if (est.minus_infinity) return;
  int g = std::gcd(est.numerator, est.denominator);
  if (g > 1) {
    est.numerator /= g;
    est.denominator /= g;
  }
}

// Marks `est` exact when phi sigma^s fails to be expansive on the given side.
void certify(LimitEstimate& est, const Endomorphism& e, int degree, int s, bool right_side) {
  const std::string side = right_side ? "right" : "left";
  try {
    SituationReport sr = expansiveness_situation(e, s);
    bool expansive = right_side ? sr.eta_injective : sr.xi_injective;
    if (expansive) {
      est.certificate = "phi sigma^" + std::to_string(s) + " is " + side + "-expansive; degree is not the limit";
      return;
    }
    if (static_cast<long long>(est.numerator) > static_cast<long long>(degree) * est.denominator)
      throw InvariantError("power scan exceeds a limit certified at " + std::to_string(degree));
    est.certified = true;
    est.certificate = "phi sigma^" + std::to_string(s) + " is not " + side + "-expansive (" + sr.branch + ")";
  } catch (const PreconditionError& ex) {
    est.certificate = std::string("undecided: ") + ex.what();
  }
}

}  // namespace

LimitReport limit_estimates(const Endomorphism& e, int max_power) {
  if (max_power < 1) throw PreconditionError("maximum power must be positive");
  if (!e.onto) throw PreconditionError("limits need an onto endomorphism");
  LimitReport rep;
  rep.max_power = max_power;
  DegreeReport d1 = degrees(e);
  for (int s = 1; s <= max_power; ++s) {
    DegreeReport d = s == 1 ? d1 : degrees(canonical_power(e, s));
    offer(rep.p_L, s == 1, d.P_L, s);
    offer(rep.p_R, s == 1, d.P_R, s);
    offer(rep.q_R, s == 1, d.Q_R, s);
    offer(rep.q_L, s == 1, d.Q_L, s);
  }
  for (LimitEstimate* est : {&rep.p_L, &rep.p_R, &rep.q_R, &rep.q_L}) {
    reduce(*est);
    est->certificate = "no decidable branch";
  }

  const ExtInt& qr = d1.Q_R;
  const ExtInt& ql = d1.Q_L;
  if (qr && -d1.P_L >= -*qr) certify(rep.p_L, e, d1.P_L, -d1.P_L, true);
  if (ql && d1.P_R <= *ql) certify(rep.p_R, e, d1.P_R, d1.P_R, false);
  if (!qr) {
    rep.q_R.certified = true;
    rep.q_R.certificate = "not right-closing";
  } else if (-d1.P_L <= -*qr || (ql && *ql >= -*qr)) {
    certify(rep.q_R, e, *qr, -*qr, false);
  }
  if (!ql) {
    rep.q_L.certified = true;
    rep.q_L.certificate = "not left-closing";
  } else if (d1.P_R >= *ql || (qr && *ql >= -*qr)) {
    certify(rep.q_L, e, *ql, *ql, true);
  }
  return rep;
}

std::string to_string(const LimitEstimate& v) {
  if (v.minus_infinity) return "-inf";
  if (v.denominator == 1) return std::to_string(v.numerator);
  return std::to_string(v.numerator) + "/" + std::to_string(v.denominator);
}

}  // namespace resolvekit
