#include "upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "logstrat/budget.hpp"

namespace logstrat::detail {

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long degree(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

bool divides_exactly(const ZPoly& a, const ZPoly& b, ZPoly* quotient) {
  if (b.empty()) return false;
  if (a.empty()) {
    if (quotient) quotient->clear();
    return true;
  }
  if (a.size() < b.size()) return false;
  ZPoly r = a;
  ZPoly q(a.size() - b.size() + 1);
  const mpz_class& lb = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class& top = r[k + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  for (const auto& c : r)
    if (c != 0) return false;
  if (quotient) {
    trim(q);
    *quotient = std::move(q);
  }
  return true;
}

namespace {

using u64 = std::uint64_t;
using PPoly = std::vector<u64>;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
  }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1u;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 from(const mpz_class& z) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
  }
};

void ptrim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long pdeg(const PPoly& f) { return static_cast<long>(f.size()) - 1; }

PPoly psub(const Fp& F, const PPoly& a, const PPoly& b) {
  PPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.sub(out[i], b[i]);
  ptrim(out);
  return out;
}

PPoly padd(const Fp& F, const PPoly& a, const PPoly& b) {
  PPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.add(out[i], b[i]);
  ptrim(out);
  return out;
}

PPoly pmul(const Fp& F, const PPoly& a, const PPoly& b) {
  if (a.empty() || b.empty()) return {};
  PPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  ptrim(out);
  return out;
}

void pdivmod(const Fp& F, const PPoly& a, const PPoly& b, PPoly* q, PPoly* r) {
  if (b.empty()) throw std::domain_error("polynomial division by zero mod p");
  PPoly rem = a;
  PPoly quo;
  if (rem.size() >= b.size()) quo.assign(rem.size() - b.size() + 1, 0);
  const u64 inv = F.inv(b.back());
  for (std::size_t k = quo.size(); k-- > 0;) {
    const u64 c = F.mul(rem[k + b.size() - 1], inv);
    quo[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] = F.sub(rem[k + j], F.mul(c, b[j]));
  }
  ptrim(rem);
  ptrim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

PPoly pmod(const Fp& F, const PPoly& a, const PPoly& b) {
  PPoly r;
  pdivmod(F, a, b, nullptr, &r);
  return r;
}

PPoly pmonic(const Fp& F, PPoly a) {
  if (a.empty()) return a;
  const u64 inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

PPoly pgcd(const Fp& F, PPoly a, PPoly b) {
  while (!b.empty()) {
    PPoly r = pmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(F, std::move(a));
}

// s*a + t*b = gcd(a, b), gcd monic.
PPoly pxgcd(const Fp& F, const PPoly& a, const PPoly& b, PPoly* s, PPoly* t) {
  PPoly r0 = a, r1 = b;
  PPoly s0{1}, s1{};
  PPoly t0{}, t1{1};
  while (!r1.empty()) {
    PPoly q, r;
    pdivmod(F, r0, r1, &q, &r);
    PPoly s2 = psub(F, s0, pmul(F, q, s1));
    PPoly t2 = psub(F, t0, pmul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const u64 inv = F.inv(r0.back());
  for (auto& c : r0) c = F.mul(c, inv);
  for (auto& c : s0) c = F.mul(c, inv);
  for (auto& c : t0) c = F.mul(c, inv);
  *s = std::move(s0);
  *t = std::move(t0);
  return r0;
}

PPoly pderiv(const Fp& F, const PPoly& a) {
  PPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(F.mul(a[i], i % F.p));
  ptrim(out);
  return out;
}

PPoly ppowmod(const Fp& F, PPoly base, const mpz_class& e, const PPoly& m) {
  PPoly result{1};
  base = pmod(F, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = pmod(F, pmul(F, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = pmod(F, pmul(F, result, base), m);
    budget::charge();
  }
  return result;
}

// Distinct-degree split of a monic square-free f: pairs (product of all
// irreducible factors of degree d, d).
std::vector<std::pair<PPoly, long>> distinct_degree(const Fp& F, PPoly f) {
  std::vector<std::pair<PPoly, long>> out;
  const PPoly x{0, 1};
  PPoly h = pmod(F, x, f);
  long d = 0;
  while (pdeg(f) >= 2 * (d + 1)) {
    ++d;
    h = ppowmod(F, h, mpz_class(F.p), f);
    PPoly g = pgcd(F, f, psub(F, h, x));
    if (pdeg(g) > 0) {
      PPoly q;
      pdivmod(F, f, g, &q, nullptr);
      f = std::move(q);
      h = pmod(F, h, f);
      out.emplace_back(std::move(g), d);
    }
  }
  if (pdeg(f) > 0) out.emplace_back(f, pdeg(f));
  return out;
}

// Cantor-Zassenhaus equal-degree splitting; p odd.
void equal_degree(const Fp& F, const PPoly& g, long d, std::mt19937_64& rng,
                  std::vector<PPoly>& out) {
  const long n = pdeg(g);
  if (n == d) {
    out.push_back(g);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coeff(0, F.p - 1);
  for (;;) {
    PPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = coeff(rng);
    ptrim(a);
    if (pdeg(a) < 1) continue;
    PPoly b = ppowmod(F, a, e, g);
    b = psub(F, b, PPoly{1});
    PPoly c = pgcd(F, g, b);
    if (pdeg(c) > 0 && pdeg(c) < n) {
      PPoly q;
      pdivmod(F, g, c, &q, nullptr);
      equal_degree(F, c, d, rng, out);
      equal_degree(F, pmonic(F, q), d, rng, out);
      return;
    }
  }
}

std::vector<PPoly> factor_mod_p(const Fp& F, const PPoly& f) {
  std::mt19937_64 rng(0x5eed0000u + F.p);
  std::vector<PPoly> out;
  for (const auto& [g, d] : distinct_degree(F, pmonic(F, f))) equal_degree(F, g, d, rng, out);
  return out;
}

PPoly reduce(const Fp& F, const ZPoly& f) {
  PPoly out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(F.from(c));
  ptrim(out);
  return out;
}

ZPoly lift_to_z(const PPoly& f) {
  ZPoly out;
  out.reserve(f.size());
  for (u64 c : f) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

void reduce_mod(ZPoly& f, const mpz_class& m) {
  for (auto& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(f);
}

// Linear Hensel lifting: given F = g0 * h0 mod p with g0 monic and coprime to
// h0, returns g, h with F = g * h mod p^k, g monic and g = g0, h = h0 mod p.
void hensel_lift(const Fp& F, const ZPoly& target, const PPoly& g0, const PPoly& h0, int k,
                 ZPoly* g_out, ZPoly* h_out) {
  PPoly s, t;
  pxgcd(F, g0, h0, &s, &t);
  mpz_class modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), F.p, static_cast<unsigned long>(k));
  ZPoly g = lift_to_z(g0);
  ZPoly h = lift_to_z(h0);
  mpz_fdiv_r(h.back().get_mpz_t(), target.back().get_mpz_t(), modulus.get_mpz_t());
  mpz_class pj = F.p;
  for (int j = 1; j < k; ++j) {
    budget::charge();
    ZPoly e = target;
    const ZPoly gh = mul(g, h);
    e.resize(std::max(e.size(), gh.size()));
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    PPoly ep;
    ep.reserve(e.size());
    for (auto& c : e) {
      if (!mpz_divisible_p(c.get_mpz_t(), pj.get_mpz_t()))
        throw std::logic_error("hensel lifting invariant broken");
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
      ep.push_back(F.from(c));
    }
    ptrim(ep);
    PPoly q, a;
    pdivmod(F, pmul(F, ep, t), g0, &q, &a);
    PPoly b = padd(F, pmul(F, ep, s), pmul(F, q, h0));
    const mpz_class next = pj * F.p;
    for (std::size_t i = 0; i < a.size(); ++i) g[i] += pj * static_cast<unsigned long>(a[i]);
    if (h.size() < b.size()) h.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) h[i] += pj * static_cast<unsigned long>(b[i]);
    reduce_mod(g, next);
    reduce_mod(h, next);
    pj = next;
  }
  *g_out = std::move(g);
  *h_out = std::move(h);
}

ZPoly primitive_positive(ZPoly f) {
  trim(f);
  if (f.empty()) return f;
  mpz_class c = 0;
  for (const auto& x : f) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
  if (f.back() < 0) c = -c;
  for (auto& x : f) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return f;
}

bool less_zpoly(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<ZPoly> factor_squarefree(const ZPoly& f_in) {
  ZPoly f = f_in;
  trim(f);
  const long n = degree(f);
  if (n < 1) throw std::invalid_argument("factor_squarefree: degree must be positive");
  if (n == 1) return {f};

  // Try a few good primes and keep the one with the fewest modular factors.
  u64 best_p = 0;
  std::vector<PPoly> best;
  int good = 0;
  mpz_class cand = 10007;
  while (good < 4) {
    const u64 p = cand.get_ui();
    mpz_nextprime(cand.get_mpz_t(), cand.get_mpz_t());
    const Fp F{p};
    if (F.from(f.back()) == 0) continue;
    const PPoly fp = reduce(F, f);
    if (pdeg(pgcd(F, fp, pderiv(F, fp))) != 0) continue;
    ++good;
    std::vector<PPoly> fac = factor_mod_p(F, fp);
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = std::move(fac);
    }
    if (best.size() == 1) break;
  }
  if (best.size() == 1) return {f};
  const Fp F{best_p};

  // Coefficient bound for lc(f)/lc(g) * g over all factors g of f.
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_sqrt(norm2.get_mpz_t(), norm2.get_mpz_t());
  norm2 += 1;
  mpz_class bound = norm2 * abs(f.back()) * 2;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  int k = 1;
  mpz_class modulus = F.p;
  while (modulus <= bound) {
    modulus *= F.p;
    ++k;
  }

  // Peel one monic modular factor at a time off the running cofactor.
  std::vector<ZPoly> lifted;
  ZPoly rest = f;
  const u64 lc_p = F.from(f.back());
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    PPoly cof{lc_p};
    for (std::size_t j = i + 1; j < best.size(); ++j) cof = pmul(F, cof, best[j]);
    ZPoly g, h;
    hensel_lift(F, rest, best[i], cof, k, &g, &h);
    lifted.push_back(std::move(g));
    rest = std::move(h);
  }
  {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), modulus.get_mpz_t());
    for (auto& c : rest) c *= inv;
    reduce_mod(rest, modulus);
    lifted.push_back(std::move(rest));
  }

  const mpz_class half = modulus / 2;
  auto symmetric = [&](ZPoly& g) {
    for (auto& c : g) {
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
      if (c > half) c -= modulus;
    }
    trim(g);
  };

  std::vector<ZPoly> out;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  ZPoly fl = f;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    do {
      budget::charge();
      ZPoly g{fl.back()};
      for (std::size_t i : idx) {
        g = mul(g, lifted[remaining[i]]);
        symmetric(g);
      }
      g = primitive_positive(g);
      if (degree(g) < 1) continue;
      if (fl[0] != 0 && (g[0] == 0 || !mpz_divisible_p(fl[0].get_mpz_t(), g[0].get_mpz_t())))
        continue;
      ZPoly q;
      if (!divides_exactly(fl, g, &q)) continue;
      out.push_back(std::move(g));
      fl = std::move(q);
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < remaining.size(); ++i)
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(remaining[i]);
      remaining = std::move(keep);
      found = true;
      break;
    } while (next_combination(idx, remaining.size()));
    if (!found) ++s;
  }
  if (degree(fl) > 0) out.push_back(primitive_positive(fl));
  std::sort(out.begin(), out.end(), less_zpoly);
  return out;
}

}  // namespace logstrat::detail
