#include "eulerml/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "eulerml/errors.hpp"

namespace eulerml {
namespace {

std::atomic<long> gSelfChecks{0};

// --- fraction-free internal form -------------------------------------------
//
// The hot loop works over ZZ: each polynomial is a vector of (monomial, mpz)
// terms sorted descending under the active order, kept integer-primitive
// (content 1) with positive leading coefficient. Rational inputs are cleared
// of denominators on entry; the final basis is converted back to monic
// rational form.

struct ZTerm {
  Monomial mono;
  mpz_class coeff;
};

struct ZPoly {
  std::vector<ZTerm> terms;
  unsigned sugar = 0; // degree bound carried through reductions

  bool isZero() const { return terms.empty(); }
  const ZTerm& lead() const { return terms.front(); }
};

unsigned totalDegree(const ZPoly& p) {
  unsigned d = 0;
  for (const auto& t : p.terms) d = std::max(d, t.mono.degree());
  return d;
}

// Divide out the integer content and force a positive leading coefficient.
void stripContent(ZPoly& p) {
  if (p.terms.empty()) return;
  mpz_class g = 0;
  for (const auto& t : p.terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(p.terms.front().coeff) < 0) g = -g;
  if (g != 1) {
    for (auto& t : p.terms) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
  }
}

ZPoly fromRatPoly(const RatPoly& p, const MonomialOrder& order) {
  ZPoly out;
  if (p.isZero()) return out;
  mpz_class denLcm = 1;
  for (const auto& [mono, c] : p.terms())
    mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), c.get_den().get_mpz_t());
  out.terms.reserve(p.termCount());
  for (const auto& [mono, c] : p.terms()) {
    mpz_class z = c.get_num() * mpz_class(denLcm / c.get_den());
    out.terms.push_back({mono, z});
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [&order](const ZTerm& a, const ZTerm& b) { return order.compare(a.mono, b.mono) > 0; });
  stripContent(out);
  out.sugar = totalDegree(out);
  return out;
}

RatPoly toMonicRatPoly(const ZPoly& p, const RingPtr& ring) {
  std::vector<std::pair<Monomial, Rat>> terms;
  terms.reserve(p.terms.size());
  const mpz_class& lc = p.lead().coeff;
  for (const auto& t : p.terms) {
    mpq_class q(t.coeff, lc);
    q.canonicalize();
    terms.push_back({t.mono, Rat(q)});
  }
  return RatPoly::fromTerms(ring, terms);
}

// r = a*p - b*(m * q), merged in one descending pass. Leading terms cancel
// when called from a reduction step; sugar is the max of the inputs' bounds.
ZPoly combineScaled(const ZPoly& p, const mpz_class& a, const ZPoly& q, const mpz_class& b,
                    const Monomial& m, const MonomialOrder& order) {
  ZPoly out;
  out.terms.reserve(p.terms.size() + q.terms.size());
  std::size_t i = 0, j = 0;
  while (i < p.terms.size() && j < q.terms.size()) {
    Monomial qm = q.terms[j].mono * m;
    int cmp = order.compare(p.terms[i].mono, qm);
    if (cmp > 0) {
      out.terms.push_back({p.terms[i].mono, mpz_class(a * p.terms[i].coeff)});
      ++i;
    } else if (cmp < 0) {
      out.terms.push_back({std::move(qm), mpz_class(-b * q.terms[j].coeff)});
      ++j;
    } else {
      mpz_class c = a * p.terms[i].coeff - b * q.terms[j].coeff;
      if (sgn(c) != 0) out.terms.push_back({p.terms[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < p.terms.size(); ++i)
    out.terms.push_back({p.terms[i].mono, mpz_class(a * p.terms[i].coeff)});
  for (; j < q.terms.size(); ++j)
    out.terms.push_back({q.terms[j].mono * m, mpz_class(-b * q.terms[j].coeff)});
  out.sugar = std::max(p.sugar, q.sugar + m.degree());
  return out;
}

struct BasisEntry {
  ZPoly poly;
  bool redundant = false; // superseded for the minimal basis; still a valid reducer
};

// Pending critical pair, ordered by (sugar, lcm degree, order on lcm, i, j).
struct Pair {
  std::size_t i, j;
  Monomial lcmMono;
  unsigned sugar;
  unsigned lcmDegree;
};

class Engine {
public:
  Engine(RingPtr ring, const MonomialOrder& order, const GroebnerLimits& limits)
      : ring_(std::move(ring)), order_(order), limits_(limits),
        pending_([this](const Pair& a, const Pair& b) { return pairLess(a, b); }) {}

  GroebnerBasis run(const std::vector<RatPoly>& gens) {
    for (const auto& g : gens) {
      if (!g.isZero()) requireSameRing(ring_, g.ring());
    }
    for (const auto& g : gens) {
      ZPoly z = fromRatPoly(g, order_);
      if (z.isZero()) continue;
      // reduce on entry so no stored leading monomial divides another
      ZPoly r = reduceFull(std::move(z));
      if (!r.isZero()) addElement(std::move(r));
      if (unit_) break;
    }
    while (!unit_ && !pending_.empty()) {
      Pair pr = *pending_.begin();
      pending_.erase(pending_.begin());
      ZPoly s = sPolynomial(pr);
      ZPoly r = reduceFull(std::move(s));
      if (!r.isZero()) addElement(std::move(r));
    }
    return finish();
  }

  // Full reduction of p against the current basis (all entries, index order).
  // Fraction-free: reduction steps rescale p, so already-emitted remainder
  // terms are rescaled in lockstep and content is stripped jointly.
  ZPoly reduceFull(ZPoly p) {
    std::vector<ZTerm> rem;
    unsigned sinceStrip = 0;
    while (!p.terms.empty()) {
      std::size_t ri = basis_.size();
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (basis_[k].poly.lead().mono.divides(p.lead().mono)) {
          ri = k;
          break;
        }
      }
      if (ri == basis_.size()) {
        rem.push_back(p.lead());
        p.terms.erase(p.terms.begin());
        continue;
      }
      const ZPoly& g = basis_[ri].poly;
      Monomial m = g.lead().mono.quotientOf(p.lead().mono);
      mpz_class a = g.lead().coeff;
      mpz_class b = p.lead().coeff;
      p = combineScaled(p, a, g, b, m, order_);
      if (a != 1) {
        for (auto& t : rem) t.coeff *= a;
      }
      if (++sinceStrip >= 4) {
        jointStrip(rem, p);
        sinceStrip = 0;
      }
    }
    ZPoly out;
    out.terms = std::move(rem);
    out.sugar = p.sugar;
    stripContent(out);
    if (!out.terms.empty()) out.sugar = std::max(out.sugar, totalDegree(out));
    return out;
  }

  GroebnerBasis finish() {
    GroebnerBasis gb;
    gb.ring = ring_;
    gb.order = order_;
    gb.reduced = true;
    if (unit_) {
      gb.generators.push_back(RatPoly::constant(ring_, Rat(1)));
      return gb;
    }
    // Minimal basis: drop entries whose leading monomial is divisible by
    // another surviving entry's leading monomial.
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (!basis_[k].redundant) keep.push_back(k);
    }
    // Interreduce: fully reduce each survivor against the other survivors.
    std::vector<ZPoly> minimal;
    minimal.reserve(keep.size());
    for (std::size_t k : keep) minimal.push_back(basis_[k].poly);
    std::vector<ZPoly> reduced;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<BasisEntry> others;
      others.reserve(minimal.size() - 1 + reduced.size());
      // use already-reduced forms where available, raw forms otherwise
      for (std::size_t l = 0; l < minimal.size(); ++l) {
        if (l == k) continue;
        others.push_back({l < k ? reduced[l] : minimal[l], false});
      }
      std::swap(basis_, others);
      ZPoly r = reduceFull(minimal[k]);
      std::swap(basis_, others);
      if (r.isZero())
        throw Error("interreduction unexpectedly cancelled a minimal basis element");
      reduced.push_back(std::move(r));
    }
    // Sort generators ascending by leading monomial for a canonical output.
    std::sort(reduced.begin(), reduced.end(), [this](const ZPoly& a, const ZPoly& b) {
      return order_.compare(a.lead().mono, b.lead().mono) < 0;
    });
    for (const auto& z : reduced) gb.generators.push_back(toMonicRatPoly(z, ring_));
    return gb;
  }

private:
  static void jointStrip(std::vector<ZTerm>& rem, ZPoly& p) {
    if (rem.empty()) {
      stripContent(p);
      return;
    }
    mpz_class g = 0;
    for (const auto& t : rem) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
      if (g == 1) return;
    }
    for (const auto& t : p.terms) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
      if (g == 1) return;
    }
    if (sgn(g) == 0 || g == 1) return;
    for (auto& t : rem) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
    for (auto& t : p.terms) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
  }

  bool pairLess(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    if (a.lcmDegree != b.lcmDegree) return a.lcmDegree < b.lcmDegree;
    int cmp = order_.compare(a.lcmMono, b.lcmMono);
    if (cmp != 0) return cmp < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }

  Pair makePair(std::size_t i, std::size_t j) const {
    const ZPoly& f = basis_[i].poly;
    const ZPoly& g = basis_[j].poly;
    Monomial u = Monomial::lcm(f.lead().mono, g.lead().mono);
    unsigned sug = std::max(f.sugar + f.lead().mono.quotientOf(u).degree(),
                            g.sugar + g.lead().mono.quotientOf(u).degree());
    unsigned deg = u.degree();
    return Pair{i, j, std::move(u), sug, deg};
  }

  ZPoly sPolynomial(const Pair& pr) const {
    const ZPoly& f = basis_[pr.i].poly;
    const ZPoly& g = basis_[pr.j].poly;
    Monomial mf = f.lead().mono.quotientOf(pr.lcmMono);
    Monomial mg = g.lead().mono.quotientOf(pr.lcmMono);
    // lc(g) * mf * f - lc(f) * mg * g: shift f by mf first, then combine.
    ZPoly fs;
    fs.terms.reserve(f.terms.size());
    for (const auto& t : f.terms) fs.terms.push_back({t.mono * mf, t.coeff});
    fs.sugar = f.sugar + mf.degree();
    ZPoly s = combineScaled(fs, g.lead().coeff, g, f.lead().coeff, mg, order_);
    s.sugar = std::max(fs.sugar, g.sugar + mg.degree());
    stripContent(s);
    return s;
  }

  void addElement(ZPoly z) {
    stripContent(z);
    if (z.terms.size() == 1 && z.lead().mono.isConstant()) {
      unit_ = true;
      return;
    }
    if (totalDegree(z) > limits_.maxTotalDegree)
      throw ResourceLimitError("basis element exceeds the degree cap", basis_.size(),
                               totalDegree(z));
    if (basis_.size() + 1 > limits_.maxBasisSize)
      throw ResourceLimitError("basis size cap exceeded", basis_.size() + 1, totalDegree(z));

    std::size_t t = basis_.size();
    const Monomial& ltNew = z.lead().mono;

    // Chain criterion on pending pairs: (i,j) is dropped when the new leading
    // term divides lcm(i,j) strictly finer than either side's pairing with t.
    for (auto it = pending_.begin(); it != pending_.end();) {
      const Pair& pr = *it;
      if (ltNew.divides(pr.lcmMono)) {
        Monomial lit = Monomial::lcm(basis_[pr.i].poly.lead().mono, ltNew);
        Monomial ljt = Monomial::lcm(basis_[pr.j].poly.lead().mono, ltNew);
        if (!(lit == pr.lcmMono) && !(ljt == pr.lcmMono)) {
          it = pending_.erase(it);
          continue;
        }
      }
      ++it;
    }

    // Mark superseded entries (their leading monomial is a multiple of the
    // new one); they stay available as reducers.
    for (auto& e : basis_) {
      if (!e.redundant && ltNew.divides(e.poly.lead().mono)) e.redundant = true;
    }

    basis_.push_back({std::move(z), false});

    // New pairs (i, t), pruned by the multiple/equal-lcm and coprime criteria.
    std::vector<Pair> fresh;
    fresh.reserve(t);
    for (std::size_t i = 0; i < t; ++i) fresh.push_back(makePair(i, t));
    std::vector<bool> drop(fresh.size(), false);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      if (drop[a]) continue;
      for (std::size_t b = 0; b < fresh.size(); ++b) {
        if (a == b || drop[b]) continue;
        if (fresh[b].lcmMono.divides(fresh[a].lcmMono) && !(fresh[b].lcmMono == fresh[a].lcmMono)) {
          drop[a] = true;
          break;
        }
      }
    }
    // Group the survivors by equal lcm: a coprime member kills the group,
    // otherwise only the smallest index is kept.
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      if (drop[a]) continue;
      bool coprimeGroup =
          Monomial::coprime(basis_[fresh[a].i].poly.lead().mono, ltNew);
      std::vector<std::size_t> group{a};
      for (std::size_t b = a + 1; b < fresh.size(); ++b) {
        if (drop[b]) continue;
        if (fresh[b].lcmMono == fresh[a].lcmMono) {
          group.push_back(b);
          if (Monomial::coprime(basis_[fresh[b].i].poly.lead().mono, ltNew)) coprimeGroup = true;
        }
      }
      if (coprimeGroup) {
        for (std::size_t g : group) drop[g] = true;
      } else {
        for (std::size_t gi = 1; gi < group.size(); ++gi) drop[group[gi]] = true;
      }
    }
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      if (!drop[a]) pending_.insert(std::move(fresh[a]));
    }
  }

  RingPtr ring_;
  MonomialOrder order_;
  GroebnerLimits limits_;
  std::vector<BasisEntry> basis_;
  std::set<Pair, std::function<bool(const Pair&, const Pair&)>> pending_;
  bool unit_ = false;
};

// Leading term of a rational polynomial under an arbitrary order.
std::pair<Monomial, Rat> leadUnder(const RatPoly& p, const MonomialOrder& order) {
  const Monomial* best = nullptr;
  const Rat* bc = nullptr;
  for (const auto& [mono, c] : p.terms()) {
    if (!best || order.compare(mono, *best) > 0) {
      best = &mono;
      bc = &c;
    }
  }
  return {*best, *bc};
}

bool usesPrefix(const RatPoly& p, std::size_t prefixSize) {
  for (const auto& [mono, c] : p.terms()) {
    for (std::size_t v = 0; v < prefixSize; ++v) {
      if (mono[v] != 0) return true;
    }
  }
  return false;
}

void maybeSelfCheck(const GroebnerBasis& gb, const GroebnerLimits& limits) {
  if (limits.selfCheckLimit == 0 || gb.generators.size() > limits.selfCheckLimit) return;
  if (gb.generators.size() < 2) return;
  ++gSelfChecks;
  if (!sPairsReduceToZero(gb))
    throw Error("post-hoc S-pair verification failed on a finished basis");
}

} // namespace

GroebnerBasis buchberger(const std::vector<RatPoly>& gens, const MonomialOrder& order,
                         const GroebnerLimits& limits) {
  RingPtr ring;
  for (const auto& g : gens) {
    if (!ring) ring = g.ring();
  }
  if (!ring) throw ValueError("buchberger requires at least one polynomial to fix the ring");
  Engine engine(ring, order, limits);
  GroebnerBasis gb = engine.run(gens);
  maybeSelfCheck(gb, limits);
  return gb;
}

RatPoly normalForm(const RatPoly& p, const GroebnerBasis& gb) {
  requireSameRing(gb.ring, p.ring());
  if (p.isZero()) return p;
  // Work on a descending term list under the basis order; generators are monic.
  std::vector<std::pair<Monomial, Rat>> work(p.terms().begin(), p.terms().end());
  std::sort(work.begin(), work.end(), [&gb](const auto& a, const auto& b) {
    return gb.order.compare(a.first, b.first) > 0;
  });
  struct LeadCache {
    Monomial mono;
    const RatPoly* poly;
  };
  std::vector<LeadCache> leads;
  leads.reserve(gb.generators.size());
  for (const auto& g : gb.generators) leads.push_back({leadUnder(g, gb.order).first, &g});

  std::vector<std::pair<Monomial, Rat>> rem;
  while (!work.empty()) {
    auto [lm, lc] = work.front();
    const RatPoly* red = nullptr;
    const Monomial* redLead = nullptr;
    for (const auto& entry : leads) {
      if (entry.mono.divides(lm)) {
        red = entry.poly;
        redLead = &entry.mono;
        break;
      }
    }
    if (!red) {
      rem.push_back(work.front());
      work.erase(work.begin());
      continue;
    }
    Monomial shift = redLead->quotientOf(lm);
    // work -= lc * shift * red (red is monic, so the leads cancel exactly)
    std::vector<std::pair<Monomial, Rat>> sub;
    sub.reserve(red->termCount());
    for (const auto& [mono, c] : red->terms()) sub.push_back({mono * shift, Rat(lc * c)});
    std::sort(sub.begin(), sub.end(), [&gb](const auto& a, const auto& b) {
      return gb.order.compare(a.first, b.first) > 0;
    });
    std::vector<std::pair<Monomial, Rat>> merged;
    merged.reserve(work.size() + sub.size());
    std::size_t i = 0, j = 0;
    while (i < work.size() && j < sub.size()) {
      int cmp = gb.order.compare(work[i].first, sub[j].first);
      if (cmp > 0) {
        merged.push_back(std::move(work[i++]));
      } else if (cmp < 0) {
        merged.push_back({sub[j].first, Rat(-sub[j].second)});
        ++j;
      } else {
        Rat c(work[i].second - sub[j].second);
        if (sgn(c) != 0) merged.push_back({work[i].first, std::move(c)});
        ++i;
        ++j;
      }
    }
    for (; i < work.size(); ++i) merged.push_back(std::move(work[i]));
    for (; j < sub.size(); ++j) merged.push_back({sub[j].first, Rat(-sub[j].second)});
    work = std::move(merged);
  }
  std::vector<std::pair<Monomial, Rat>> terms(rem.begin(), rem.end());
  return RatPoly::fromTerms(p.ring(), terms);
}

std::vector<RatPoly> eliminate(const std::vector<RatPoly>& gens, std::size_t prefixSize,
                               const GroebnerLimits& limits) {
  GroebnerBasis gb = buchberger(gens, MonomialOrder::block(prefixSize), limits);
  std::vector<RatPoly> out;
  for (const auto& g : gb.generators) {
    if (!usesPrefix(g, prefixSize)) out.push_back(g);
  }
  return out;
}

std::vector<RatPoly> saturateByPoly(const std::vector<RatPoly>& gens, const RatPoly& g,
                                    const GroebnerLimits& limits) {
  if (g.isZero()) throw ValueError("cannot saturate by the zero polynomial");
  RingPtr base;
  for (const auto& f : gens) {
    if (!base) base = f.ring();
  }
  if (!base) base = g.ring();
  requireSameRing(base, g.ring());
  if (g.isConstant()) {
    GroebnerBasis gb = buchberger(gens, MonomialOrder::grevlex(), limits);
    return gb.generators;
  }
  RingPtr ext = extendRingFront(base, {"@t"});
  std::vector<RatPoly> lifted;
  lifted.reserve(gens.size() + 1);
  for (const auto& f : gens) {
    if (!f.isZero()) lifted.push_back(liftWithPrefix(f, ext, 1));
  }
  RatPoly t = RatPoly::variable(ext, 0);
  lifted.push_back(t * liftWithPrefix(g, ext, 1) - RatPoly::constant(ext, Rat(1)));
  std::vector<RatPoly> elim = eliminate(lifted, 1, limits);
  std::vector<RatPoly> out;
  out.reserve(elim.size());
  for (const auto& f : elim) out.push_back(dropPrefix(f, base, 1));
  if (out.empty()) return out;
  // canonical form: the reduced grevlex basis (unique for the ideal), so any
  // route to the same saturation yields bit-identical generators
  return buchberger(out, MonomialOrder::grevlex(), limits).generators;
}

std::vector<RatPoly> intersectIdeals(const std::vector<RatPoly>& I,
                                     const std::vector<RatPoly>& J,
                                     const GroebnerLimits& limits) {
  RingPtr base;
  for (const auto& f : I) {
    if (!base) base = f.ring();
  }
  for (const auto& f : J) {
    if (!base) base = f.ring();
  }
  if (!base) throw ValueError("ideal intersection requires at least one polynomial");
  RingPtr ext = extendRingFront(base, {"@t"});
  RatPoly t = RatPoly::variable(ext, 0);
  RatPoly oneMinusT = RatPoly::constant(ext, Rat(1)) - t;
  std::vector<RatPoly> lifted;
  lifted.reserve(I.size() + J.size());
  for (const auto& f : I) {
    if (!f.isZero()) lifted.push_back(t * liftWithPrefix(f, ext, 1));
  }
  for (const auto& f : J) {
    if (!f.isZero()) lifted.push_back(oneMinusT * liftWithPrefix(f, ext, 1));
  }
  if (lifted.empty()) return {};
  std::vector<RatPoly> elim = eliminate(lifted, 1, limits);
  std::vector<RatPoly> out;
  out.reserve(elim.size());
  for (const auto& f : elim) out.push_back(dropPrefix(f, base, 1));
  return out;
}

std::vector<RatPoly> saturateByIdeal(const std::vector<RatPoly>& gens,
                                     const std::vector<RatPoly>& J,
                                     const GroebnerLimits& limits) {
  std::vector<const RatPoly*> live;
  for (const auto& g : J) {
    if (!g.isZero()) live.push_back(&g);
  }
  if (live.empty()) throw ValueError("cannot saturate by the zero ideal");

  GroebnerBasis gbI = buchberger(gens, MonomialOrder::grevlex(), limits);
  if (gbI.isUnitIdeal() || gbI.generators.empty()) return gbI.generators;

  std::optional<std::vector<RatPoly>> acc;
  for (const RatPoly* g : live) {
    // g inside the ideal saturates to the unit ideal, which is neutral for
    // the intersection.
    if (normalForm(*g, gbI).isZero()) continue;
    std::vector<RatPoly> sat = saturateByPoly(gbI.generators, *g, limits);
    if (!acc) {
      acc = std::move(sat);
    } else {
      acc = intersectIdeals(*acc, sat, limits);
    }
  }
  if (!acc) {
    // every generator of J lies in I, so each saturation is the unit ideal
    RingPtr ring = gbI.ring;
    return {RatPoly::constant(ring, Rat(1))};
  }
  if (acc->empty()) return {};
  GroebnerBasis out = buchberger(*acc, MonomialOrder::grevlex(), limits);
  return out.generators;
}

int dimension(const GroebnerBasis& gb) {
  if (gb.isUnitIdeal()) return -1;
  std::size_t n = gb.ring->size();
  if (gb.generators.empty()) return static_cast<int>(n);
  if (n > 20) throw ValueError("dimension search supports at most 20 variables");
  std::vector<Monomial> leads;
  leads.reserve(gb.generators.size());
  for (const auto& g : gb.generators) leads.push_back(leadUnder(g, gb.order).first);

  // A variable subset S is independent when no leading monomial is supported
  // entirely inside S. Scan subsets largest-first.
  std::vector<std::uint32_t> supports;
  supports.reserve(leads.size());
  for (const auto& m : leads) {
    std::uint32_t s = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (m[v] != 0) s |= (1u << v);
    }
    supports.push_back(s);
  }
  std::vector<std::vector<std::uint32_t>> bySize(n + 1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    bySize[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);
  for (int size = static_cast<int>(n); size >= 0; --size) {
    for (std::uint32_t mask : bySize[static_cast<std::size_t>(size)]) {
      bool independent = true;
      for (std::uint32_t s : supports) {
        if ((s & ~mask) == 0) {
          independent = false;
          break;
        }
      }
      if (independent) return size;
    }
  }
  return -1;
}

long zeroDimDegree(const GroebnerBasis& gb) {
  if (gb.isUnitIdeal()) return 0;
  std::size_t n = gb.ring->size();
  if (gb.generators.empty())
    throw NotZeroDimensionalError("the zero ideal is not zero-dimensional");
  std::vector<Monomial> leads;
  leads.reserve(gb.generators.size());
  for (const auto& g : gb.generators) leads.push_back(leadUnder(g, gb.order).first);

  // Zero-dimensional iff every variable carries a pure power leading term.
  std::vector<unsigned> box(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& m : leads) {
      bool pure = m[v] != 0;
      if (!pure) continue;
      for (std::size_t w = 0; w < n && pure; ++w) {
        if (w != v && m[w] != 0) pure = false;
      }
      if (pure && (box[v] == 0 || m[v] < box[v])) box[v] = m[v];
    }
    if (box[v] == 0)
      throw NotZeroDimensionalError("no pure power of variable '" + gb.ring->name(v) +
                                    "' in the leading-term ideal");
  }
  long bound = 1;
  for (unsigned b : box) {
    bound *= static_cast<long>(b);
    if (bound > 10'000'000L) throw ResourceLimitError("standard monomial box too large", 0, 0);
  }
  // Count monomials in the box not divisible by any leading monomial.
  long count = 0;
  std::vector<unsigned> expo(n, 0);
  while (true) {
    bool standard = true;
    for (const auto& m : leads) {
      bool div = true;
      for (std::size_t v = 0; v < n && div; ++v) {
        if (m[v] > expo[v]) div = false;
      }
      if (div) {
        standard = false;
        break;
      }
    }
    if (standard) ++count;
    std::size_t v = 0;
    while (v < n && ++expo[v] >= box[v]) {
      expo[v] = 0;
      ++v;
    }
    if (v == n) break;
  }
  return count;
}

bool sPairsReduceToZero(const GroebnerBasis& gb) {
  if (gb.generators.size() < 2) return true;
  for (std::size_t i = 0; i < gb.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < gb.generators.size(); ++j) {
      auto [li, ci] = leadUnder(gb.generators[i], gb.order);
      auto [lj, cj] = leadUnder(gb.generators[j], gb.order);
      Monomial u = Monomial::lcm(li, lj);
      Monomial mi = li.quotientOf(u);
      Monomial mj = lj.quotientOf(u);
      RatPoly shiftI = RatPoly::zero(gb.ring);
      RatPoly shiftJ = RatPoly::zero(gb.ring);
      {
        std::vector<std::pair<Monomial, Rat>> ti, tj;
        for (const auto& [mono, c] : gb.generators[i].terms()) ti.push_back({mono * mi, c});
        for (const auto& [mono, c] : gb.generators[j].terms()) tj.push_back({mono * mj, c});
        shiftI = RatPoly::fromTerms(gb.ring, ti);
        shiftJ = RatPoly::fromTerms(gb.ring, tj);
      }
      RatPoly s = shiftI.scaled(Rat(1) / ci) - shiftJ.scaled(Rat(1) / cj);
      if (!normalForm(s, gb).isZero()) return false;
    }
  }
  return true;
}

long groebnerSelfCheckCount() { return gSelfChecks.load(); }

} // namespace eulerml
