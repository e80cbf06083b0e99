#include "adlab/rational.hpp"

#include "adlab/interval.hpp"

#include <sstream>

namespace adlab {

std::string rat_to_string(const Rat& r) {
  Rat c(r);
  c.canonicalize();
  return c.get_str();
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) throw InputError("bad rational literal: " + s);
  if (r.get_den() == 0) throw InputError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

Rat round_to_grid(const Rat& value, const Rat& grid) {
  if (grid <= 0) throw InputError("grid must be positive");
  // value/grid = k + frac; pick k or k+1 by comparing frac with 1/2, ties up.
  Rat t = value / grid;
  Int k = rat_floor(t);
  Rat frac = t - Rat(k);
  if (frac * 2 >= 1) k += 1;
  return Rat(k) * grid;
}

Int rat_floor(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return q;
}

QInterval sqrt_enclosure(const Rat& x, const Rat& tol) {
  if (x < 0) throw InputError("sqrt of negative rational");
  if (tol <= 0) throw InputError("sqrt tolerance must be positive");
  if (x == 0) return QInterval::point(Rat(0));
  Rat c(x);
  c.canonicalize();
  const Int& p = c.get_num();
  const Int& q = c.get_den();
  // Want width 1/(q*s) <= tol, i.e. s >= 1/(q*tol).
  Int s = 1;
  Rat need = Rat(1) / (Rat(q) * tol);
  if (need > 1) {
    s = rat_floor(need) + 1;
  }
  Int d = q * s;
  Int n = p * q * s * s;
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  Rat lo = Rat(r) / Rat(d);
  Rat hi = Rat(r + 1) / Rat(d);
  if (lo * lo == x) hi = lo;  // perfect square: collapse to the exact value
  return QInterval(lo, hi);
}

QInterval sqrt_enclosure(const QInterval& x, const Rat& tol) {
  if (x.lo < 0) throw InputError("sqrt of interval with negative lower end");
  Rat half = tol / 2;
  return QInterval(sqrt_enclosure(x.lo, half).lo, sqrt_enclosure(x.hi, half).hi);
}

std::string rat_approx(const Rat& r, int digits) {
  mpf_class f(r, 64 + 8 * digits);
  std::ostringstream os;
  os.precision(digits);
  os << f;
  return os.str();
}

}  // namespace adlab
