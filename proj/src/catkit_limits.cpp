#include <algorithm>
#include <functional>

#include "rigged/catkit.hpp"

namespace rigged {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

int parse_findex(const std::string& id) { return std::stoi(id.substr(1)); }

}  // namespace

std::string serialize_cfunctor(const CFunctor& F) {
  std::string s = "ob{";
  for (const auto& [k, v] : F.ob) s += k + ":" + v + ",";
  s += "};mor{";
  for (const auto& [k, v] : F.mor) s += k + ":" + v + ",";
  s += "}";
  return s;
}

std::string serialize_cnat(const CNat& n) {
  std::string s = "{";
  for (const auto& [k, v] : n.comp) s += k + ":" + v + ",";
  s += "}";
  return s;
}

int FunctorCat::index_of(const CFunctor& F) const {
  auto it = obj_index.find(serialize_cfunctor(F));
  if (it == obj_index.end()) fail("functor_cat: functor is not an object of the category");
  return it->second;
}

const std::string& FunctorCat::nat_id(int i, int j, const CNat& n) const {
  std::string key = std::to_string(i) + "|" + std::to_string(j) + "|" + serialize_cnat(n);
  auto it = nat_lookup.find(key);
  if (it == nat_lookup.end()) fail("functor_cat: transformation is not a morphism");
  return it->second;
}

FunctorCat functor_cat(const FinCat& J, const FinCat& A, size_t budget) {
  FunctorCat FC;
  size_t nodes = 0;
  auto tick = [&]() {
    if (++nodes > budget) fail("functor_cat: enumeration budget exceeded");
  };
  const std::vector<std::string>& jobs = J.objects;
  std::vector<std::string> jfree;
  for (const auto& m : J.morphisms)
    if (!J.is_id(m)) jfree.push_back(m);
  std::vector<CFunctor> fs;
  CFunctor F;
  std::function<void(size_t)> mor_rec = [&](size_t i) {
    if (i == jfree.size()) {
      for (const auto& o : jobs) F.mor[J.id_of(o)] = A.id_of(F.ob.at(o));
      bool ok = true;
      for (const auto& f : J.morphisms) {
        for (const auto& g : J.morphisms) {
          if (J.cod_of(f) != J.dom_of(g)) continue;
          if (F.mor.at(J.compose(g, f)) != A.compose(F.mor.at(g), F.mor.at(f))) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) fs.push_back(F);
      for (const auto& o : jobs) F.mor.erase(J.id_of(o));
      return;
    }
    const std::string& m = jfree[i];
    for (const auto& c : A.hom(F.ob.at(J.dom_of(m)), F.ob.at(J.cod_of(m)))) {
      tick();
      F.mor[m] = c;
      mor_rec(i + 1);
      F.mor.erase(m);
    }
  };
  std::function<void(size_t)> ob_rec = [&](size_t i) {
    if (i == jobs.size()) {
      mor_rec(0);
      return;
    }
    for (const auto& c : A.objects) {
      tick();
      F.ob[jobs[i]] = c;
      ob_rec(i + 1);
      F.ob.erase(jobs[i]);
    }
  };
  ob_rec(0);
  std::sort(fs.begin(), fs.end(), [](const CFunctor& x, const CFunctor& y) {
    return serialize_cfunctor(x) < serialize_cfunctor(y);
  });
  FC.objs = fs;
  for (size_t i = 0; i < fs.size(); ++i) {
    FC.cat.add_object("F" + std::to_string(i));
    FC.obj_index[serialize_cfunctor(fs[i])] = (int)i;
  }
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = 0; j < fs.size(); ++j) {
      std::vector<CNat> found;
      CNat n;
      std::function<void(size_t)> nat_rec = [&](size_t t) {
        if (t == jobs.size()) {
          for (const auto& m : jfree) {
            const std::string &a = J.dom_of(m), &a2 = J.cod_of(m);
            if (A.compose(n.comp.at(a2), fs[i].mor.at(m)) !=
                A.compose(fs[j].mor.at(m), n.comp.at(a)))
              return;
          }
          found.push_back(n);
          return;
        }
        for (const auto& c : A.hom(fs[i].ob.at(jobs[t]), fs[j].ob.at(jobs[t]))) {
          tick();
          n.comp[jobs[t]] = c;
          nat_rec(t + 1);
          n.comp.erase(jobs[t]);
        }
      };
      nat_rec(0);
      std::sort(found.begin(), found.end(), [](const CNat& x, const CNat& y) {
        return serialize_cnat(x) < serialize_cnat(y);
      });
      for (size_t t = 0; t < found.size(); ++t) {
        std::string id =
            "n" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(t);
        FC.cat.add_morphism(id, "F" + std::to_string(i), "F" + std::to_string(j));
        FC.nats[id] = found[t];
        FC.nat_lookup[std::to_string(i) + "|" + std::to_string(j) + "|" +
                      serialize_cnat(found[t])] = id;
      }
    }
  for (size_t i = 0; i < fs.size(); ++i)
    FC.cat.identity["F" + std::to_string(i)] =
        FC.nat_id((int)i, (int)i, nat_identity(J, A, fs[i]));
  for (const auto& m1 : FC.cat.morphisms)
    for (const auto& m2 : FC.cat.morphisms) {
      if (FC.cat.dom_of(m2) != FC.cat.cod_of(m1)) continue;
      int i = parse_findex(FC.cat.dom_of(m1)), k = parse_findex(FC.cat.cod_of(m2));
      FC.cat.comp[{m2, m1}] =
          FC.nat_id(i, k, nat_vcomp(A, FC.nats.at(m2), FC.nats.at(m1)));
    }
  return FC;
}

CFunctor postcompose_functor_cat(const CFunctor& f, const FunctorCat& AJ,
                                 const FunctorCat& BJ) {
  CFunctor T;
  for (size_t i = 0; i < AJ.objs.size(); ++i) {
    int j = BJ.index_of(cf_compose(f, AJ.objs[i]));
    T.ob[AJ.cat.objects[i]] = "F" + std::to_string(j);
  }
  for (const auto& m : AJ.cat.morphisms) {
    const CNat& n = AJ.nats.at(m);
    CNat nb;
    for (const auto& [a, g] : n.comp) nb.comp[a] = f.mor.at(g);
    int i2 = parse_findex(T.ob.at(AJ.cat.dom_of(m)));
    int j2 = parse_findex(T.ob.at(AJ.cat.cod_of(m)));
    T.mor[m] = BJ.nat_id(i2, j2, nb);
  }
  return T;
}

std::vector<Cone> enumerate_cones(const FinCat& A, const FinCat& J, const CFunctor& d) {
  std::vector<Cone> out;
  const std::vector<std::string>& jobs = J.objects;
  for (const auto& x : A.objects) {
    Cone c;
    c.apex = x;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == jobs.size()) {
        for (const auto& m : J.morphisms)
          if (A.compose(d.mor.at(m), c.legs.at(J.dom_of(m))) != c.legs.at(J.cod_of(m)))
            return;
        out.push_back(c);
        return;
      }
      for (const auto& g : A.hom(x, d.ob.at(jobs[i]))) {
        c.legs[jobs[i]] = g;
        rec(i + 1);
        c.legs.erase(jobs[i]);
      }
    };
    rec(0);
  }
  return out;
}

std::optional<Cone> find_terminal_cone(const FinCat& A, const FinCat& J, const CFunctor& d) {
  std::vector<Cone> cones = enumerate_cones(A, J, d);
  for (const auto& c0 : cones) {
    bool terminal = true;
    for (const auto& c : cones) {
      int cnt = 0;
      for (const auto& u : A.hom(c.apex, c0.apex)) {
        bool ok = true;
        for (const auto& [j, leg] : c0.legs)
          if (A.compose(leg, u) != c.legs.at(j)) {
            ok = false;
            break;
          }
        if (ok) ++cnt;
      }
      if (cnt != 1) {
        terminal = false;
        break;
      }
    }
    if (terminal) return c0;
  }
  return std::nullopt;
}

ResData res_restriction(const FinCat& A, const SSet& J, size_t budget) {
  ResData R;
  JoinSSet jc = join_cone(J);
  R.cone = jc.sset;
  R.hJ = homotopy_cat(J, budget);
  R.hcone = homotopy_cat(R.cone, budget);
  R.incl = hfunctor(J, R.cone, jc.incl, R.hJ, R.hcone);
  validate_cfunctor(R.hJ.cat, R.hcone.cat, R.incl);
  R.AJ = functor_cat(R.hJ.cat, A, budget);
  R.Acone = functor_cat(R.hcone.cat, A, budget);
  for (size_t i = 0; i < R.Acone.objs.size(); ++i) {
    int j = R.AJ.index_of(cf_compose(R.Acone.objs[i], R.incl));
    R.res.ob[R.Acone.cat.objects[i]] = "F" + std::to_string(j);
  }
  for (const auto& m : R.Acone.cat.morphisms) {
    CNat rn = nat_restrict(R.hJ.cat, R.incl, R.Acone.nats.at(m));
    int i2 = parse_findex(R.res.ob.at(R.Acone.cat.dom_of(m)));
    int j2 = parse_findex(R.res.ob.at(R.Acone.cat.cod_of(m)));
    R.res.mor[m] = R.AJ.nat_id(i2, j2, rn);
  }
  return R;
}

JLimReport jlim_check(const FinCat& A, const SSet& J, size_t budget) {
  ResData R = res_restriction(A, J, budget);
  JLimReport rep;
  try {
    rep.res_lali = is_lali(R.Acone.cat, R.AJ.cat, R.res).has_value();
  } catch (const std::exception& ex) {
    rep.witness = std::string("restriction functor: ") + ex.what();
    return rep;
  }
  rep.has_limits = true;
  for (size_t i = 0; i < R.AJ.objs.size(); ++i)
    if (!find_terminal_cone(A, R.hJ.cat, R.AJ.objs[i])) {
      rep.has_limits = false;
      if (rep.res_lali) rep.witness = "diagram F" + std::to_string(i) + " has no limit";
      break;
    }
  if (rep.res_lali && !rep.has_limits && rep.witness.empty())
    rep.witness = "restriction is a lali but some diagram has no limit";
  if (!rep.res_lali && rep.has_limits)
    rep.witness = "every diagram has a limit but the restriction is not a lali";
  return rep;
}

JLimSquareReport jlim_square_check(const FinCat& A, const FinCat& B, const CFunctor& f,
                                   const SSet& J, size_t budget) {
  validate_cfunctor(A, B, f);
  ResData RA = res_restriction(A, J, budget);
  ResData RB = res_restriction(B, J, budget);
  auto adjA = is_lali(RA.Acone.cat, RA.AJ.cat, RA.res);
  auto adjB = is_lali(RB.Acone.cat, RB.AJ.cat, RB.res);
  if (!adjA || !adjB)
    throw std::invalid_argument("jlim_square_check: both categories must admit these limits");
  CFunctor top = postcompose_functor_cat(f, RA.Acone, RB.Acone);
  CFunctor bottom = postcompose_functor_cat(f, RA.AJ, RB.AJ);
  JLimSquareReport rep;
  CNat mate = mate_of_square(RA.Acone.cat, RA.AJ.cat, RB.Acone.cat, RB.AJ.cat, top, bottom,
                             *adjA, *adjB);
  rep.lali_morphism = mate_is_iso(RB.Acone.cat, mate);
  rep.preserves_limits = true;
  for (size_t i = 0; i < RA.AJ.objs.size(); ++i) {
    const CFunctor& d = RA.AJ.objs[i];
    auto c0 = find_terminal_cone(A, RA.hJ.cat, d);
    if (!c0) fail("jlim_square_check: missing limit despite lali restriction");
    CFunctor d2 = cf_compose(f, d);
    Cone img;
    img.apex = f.ob.at(c0->apex);
    for (const auto& [j, leg] : c0->legs) img.legs[j] = f.mor.at(leg);
    /* terminality of the image cone among cones over f∘d */
    bool terminal = true;
    for (const auto& c : enumerate_cones(B, RA.hJ.cat, d2)) {
      int cnt = 0;
      for (const auto& u : B.hom(c.apex, img.apex)) {
        bool ok = true;
        for (const auto& [j, leg] : img.legs)
          if (B.compose(leg, u) != c.legs.at(j)) {
            ok = false;
            break;
          }
        if (ok) ++cnt;
      }
      if (cnt != 1) {
        terminal = false;
        break;
      }
    }
    if (!terminal) {
      rep.preserves_limits = false;
      rep.witness = "limit of diagram F" + std::to_string(i) + " is not preserved";
      break;
    }
  }
  return rep;
}

LeibnizData leibniz_target(const FinCat& E, const FinCat& B, const CFunctor& p) {
  LeibnizData L;
  L.arrows = arrow_cat(E);
  L.target = comma(B, E, B, cf_identity(B), p);
  for (const auto& o : L.arrows.cat.objects) {
    const auto& [e0, e1, alpha] = L.arrows.obj_parts.at(o);
    L.leibniz.ob[o] = L.target.object_id(p.ob.at(e0), e1, p.mor.at(alpha));
  }
  for (const auto& m : L.arrows.cat.morphisms) {
    const auto& uv = L.arrows.mor_parts.at(m);
    L.leibniz.mor[m] =
        L.target.morphism_id(p.mor.at(uv[0]), uv[1], L.leibniz.ob.at(L.arrows.cat.dom_of(m)),
                             L.leibniz.ob.at(L.arrows.cat.cod_of(m)));
  }
  validate_cfunctor(L.arrows.cat, L.target.cat, L.leibniz);
  return L;
}

CartReport cart_check(const FinCat& E, const FinCat& B, const CFunctor& p) {
  if (!is_isofibration(E, B, p))
    throw std::invalid_argument("cart_check: functor must be an isofibration");
  LeibnizData L = leibniz_target(E, B, p);
  CartReport rep;
  try {
    rep.leibniz_lali = is_lali(L.arrows.cat, L.target.cat, L.leibniz).has_value();
  } catch (const std::exception& ex) {
    rep.witness = std::string("arrow functor: ") + ex.what();
    return rep;
  }
  rep.fibration = is_grothendieck_fibration(E, B, p);
  if (rep.leibniz_lali != rep.fibration)
    rep.witness = "lali test and cartesian-lift search disagree";
  return rep;
}

CartSquareReport cart_square_check(const FinCat& E1, const FinCat& B1, const CFunctor& p1,
                                   const FinCat& E2, const FinCat& B2, const CFunctor& p2,
                                   const CFunctor& s, const CFunctor& t) {
  if (!(cf_compose(p2, s) == cf_compose(t, p1)))
    throw std::invalid_argument("cart_square_check: square does not commute");
  LeibnizData L1 = leibniz_target(E1, B1, p1);
  LeibnizData L2 = leibniz_target(E2, B2, p2);
  auto adj1 = is_lali(L1.arrows.cat, L1.target.cat, L1.leibniz);
  auto adj2 = is_lali(L2.arrows.cat, L2.target.cat, L2.leibniz);
  if (!adj1 || !adj2)
    throw std::invalid_argument("cart_square_check: both functors must be fibrations");
  CFunctor top;
  for (const auto& o : L1.arrows.cat.objects) {
    const auto& [e0, e1, alpha] = L1.arrows.obj_parts.at(o);
    top.ob[o] = L2.arrows.object_id(s.ob.at(e0), s.ob.at(e1), s.mor.at(alpha));
  }
  for (const auto& m : L1.arrows.cat.morphisms) {
    const auto& uv = L1.arrows.mor_parts.at(m);
    top.mor[m] = L2.arrows.morphism_id(s.mor.at(uv[0]), s.mor.at(uv[1]),
                                       top.ob.at(L1.arrows.cat.dom_of(m)),
                                       top.ob.at(L1.arrows.cat.cod_of(m)));
  }
  CFunctor bottom;
  for (const auto& o : L1.target.cat.objects) {
    const auto& [b, e, phi] = L1.target.obj_parts.at(o);
    bottom.ob[o] = L2.target.object_id(t.ob.at(b), s.ob.at(e), t.mor.at(phi));
  }
  for (const auto& m : L1.target.cat.morphisms) {
    const auto& bv = L1.target.mor_parts.at(m);
    bottom.mor[m] = L2.target.morphism_id(t.mor.at(bv[0]), s.mor.at(bv[1]),
                                          bottom.ob.at(L1.target.cat.dom_of(m)),
                                          bottom.ob.at(L1.target.cat.cod_of(m)));
  }
  CartSquareReport rep;
  CNat mate = mate_of_square(L1.arrows.cat, L1.target.cat, L2.arrows.cat, L2.target.cat, top,
                             bottom, *adj1, *adj2);
  rep.lali_morphism = mate_is_iso(L2.arrows.cat, mate);
  rep.preserves_cartesian = true;
  for (const auto& psi : E1.morphisms)
    if (is_cartesian_morphism(E1, B1, p1, psi) &&
        !is_cartesian_morphism(E2, B2, p2, s.mor.at(psi))) {
      rep.preserves_cartesian = false;
      rep.witness = "cartesian morphism '" + psi + "' is not preserved";
      break;
    }
  return rep;
}

PullbackLaResult pullback_la(const LaIsofib& A, const LaIsofib& B, const LaIsofib& C,
                             const CFunctor& F1, const CFunctor& F2, const CFunctor& G1,
                             const CFunctor& G2) {
  PullbackLaResult R;
  if (!(cf_compose(C.p, F1) == cf_compose(F2, A.p)))
    fail("pullback_la: comparison square does not commute");
  if (!(cf_compose(C.p, G1) == cf_compose(G2, B.p)))
    fail("pullback_la: base-change square does not commute");
  if (!is_isofibration(A.c1, A.c2, A.p) || !is_isofibration(B.c1, B.c2, B.p) ||
      !is_isofibration(C.c1, C.c2, C.p))
    fail("pullback_la: all vertical functors must be isofibrations");
  auto adjA = search_right_adjoint(A.c1, A.c2, A.p);
  auto adjB = search_right_adjoint(B.c1, B.c2, B.p);
  auto adjC = search_right_adjoint(C.c1, C.c2, C.p);
  if (!adjA || !adjB || !adjC)
    fail("pullback_la: all vertical functors must admit right adjoints");
  R.adjA = *adjA;
  R.adjB = *adjB;
  R.adjC = *adjC;
  if (!is_grothendieck_fibration(B.c1, C.c1, G1) ||
      !is_grothendieck_fibration(B.c2, C.c2, G2))
    fail("pullback_la: base-change components must be fibrations");
  R.lambdaF = mate_of_square(A.c1, A.c2, C.c1, C.c2, F1, F2, R.adjA, R.adjC);
  R.lambdaG = mate_of_square(B.c1, B.c2, C.c1, C.c2, G1, G2, R.adjB, R.adjC);
  R.lambdaG_iso = mate_is_iso(C.c1, R.lambdaG);
  if (!R.lambdaG_iso) fail("pullback_la: the mate of the base-change square must be invertible");
  CNat lamGinv = nat_inverse(C.c1, R.lambdaG);
  R.p1 = fincat_pullback(A.c1, B.c1, C.c1, F1, G1);
  R.p2 = fincat_pullback(A.c2, B.c2, C.c2, F2, G2);
  for (const auto& o : R.p1.cat.objects)
    R.P.ob[o] = R.p2.object_id(A.p.ob.at(R.p1.projA.ob.at(o)), B.p.ob.at(R.p1.projB.ob.at(o)));
  for (const auto& m : R.p1.cat.morphisms)
    R.P.mor[m] =
        R.p2.morphism_id(A.p.mor.at(R.p1.projA.mor.at(m)), B.p.mor.at(R.p1.projB.mor.at(m)));
  validate_cfunctor(R.p1.cat, R.p2.cat, R.P);
  /* pointwise cartesian lift of the composite comparison 2-cell */
  std::map<std::string, std::string> mu;
  for (const auto& q : R.p2.cat.objects) {
    const std::string& x2 = R.p2.projA.ob.at(q);
    const std::string& y2 = R.p2.projB.ob.at(q);
    mu[q] = C.c1.compose(lamGinv.comp.at(y2), R.lambdaF.comp.at(x2));
    R.chi.comp[q] = cartesian_lift(B.c1, C.c1, G1, mu.at(q), R.adjB.right.ob.at(y2));
    R.x.ob[q] = B.c1.dom_of(R.chi.comp.at(q));
  }
  for (const auto& m : R.p2.cat.morphisms) {
    const std::string &q = R.p2.cat.dom_of(m), &q2 = R.p2.cat.cod_of(m);
    const std::string& f = R.p2.projA.mor.at(m);
    const std::string& g = R.p2.projB.mor.at(m);
    std::string over = F1.mor.at(R.adjA.right.mor.at(f));
    std::string rhs = B.c1.compose(R.adjB.right.mor.at(g), R.chi.comp.at(q));
    std::vector<std::string> cands;
    for (const auto& k : B.c1.hom(R.x.ob.at(q), R.x.ob.at(q2)))
      if (G1.mor.at(k) == over && B.c1.compose(R.chi.comp.at(q2), k) == rhs)
        cands.push_back(k);
    if (cands.size() != 1) fail("pullback_la: cartesian factorization not unique");
    R.x.mor[m] = cands[0];
  }
  validate_cfunctor(R.p2.cat, B.c1, R.x);
  CFunctor r;
  for (const auto& q : R.p2.cat.objects)
    r.ob[q] = R.p1.object_id(R.adjA.right.ob.at(R.p2.projA.ob.at(q)), R.x.ob.at(q));
  for (const auto& m : R.p2.cat.morphisms)
    r.mor[m] = R.p1.morphism_id(R.adjA.right.mor.at(R.p2.projA.mor.at(m)), R.x.mor.at(m));
  validate_cfunctor(R.p2.cat, R.p1.cat, r);
  CNat unit, counit;
  for (const auto& pp : R.p1.cat.objects) {
    const std::string& u = R.p1.projA.ob.at(pp);
    const std::string& v = R.p1.projB.ob.at(pp);
    const std::string& q0 = R.P.ob.at(pp);
    if (G1.mor.at(R.adjB.unit.comp.at(v)) !=
        C.c1.compose(mu.at(q0), F1.mor.at(R.adjA.unit.comp.at(u))))
      fail("pullback_la: unit compatibility equation fails");
    std::string over = F1.mor.at(R.adjA.unit.comp.at(u));
    std::vector<std::string> cands;
    for (const auto& k : B.c1.hom(v, R.x.ob.at(q0)))
      if (G1.mor.at(k) == over &&
          B.c1.compose(R.chi.comp.at(q0), k) == R.adjB.unit.comp.at(v))
        cands.push_back(k);
    if (cands.size() != 1) fail("pullback_la: unit factorization not unique");
    R.gammabar.comp[pp] = cands[0];
    unit.comp[pp] = R.p1.morphism_id(R.adjA.unit.comp.at(u), cands[0]);
  }
  for (const auto& q : R.p2.cat.objects) {
    const std::string& x2 = R.p2.projA.ob.at(q);
    const std::string& y2 = R.p2.projB.ob.at(q);
    std::string second = B.c2.compose(R.adjB.counit.comp.at(y2), B.p.mor.at(R.chi.comp.at(q)));
    if (G2.mor.at(second) != F2.mor.at(R.adjA.counit.comp.at(x2)))
      fail("pullback_la: counit compatibility equation fails");
    counit.comp[q] = R.p2.morphism_id(R.adjA.counit.comp.at(x2), second);
  }
  R.adj = {R.P, r, unit, counit};
  try {
    validate_adjunction(R.p1.cat, R.p2.cat, R.adj);
    R.triangles_ok = true;
  } catch (const std::exception& ex) {
    R.triangles_ok = false;
    R.report += std::string("triangle identities: ") + ex.what() + "\n";
  }
  auto oadj = search_right_adjoint(R.p1.cat, R.p2.cat, R.P);
  if (!oadj) {
    R.oracle_ok = false;
    R.report += "oracle search found no right adjoint\n";
  } else {
    bool ok = true;
    CNat kappa;
    for (const auto& q : R.p2.cat.objects) {
      kappa.comp[q] =
          R.p1.cat.compose(r.mor.at(oadj->counit.comp.at(q)), unit.comp.at(oadj->right.ob.at(q)));
      if (!R.p1.cat.is_iso(kappa.comp.at(q))) ok = false;
    }
    if (ok)
      for (const auto& g : R.p2.cat.morphisms)
        if (R.p1.cat.compose(kappa.comp.at(R.p2.cat.cod_of(g)), oadj->right.mor.at(g)) !=
            R.p1.cat.compose(r.mor.at(g), kappa.comp.at(R.p2.cat.dom_of(g)))) {
          ok = false;
          break;
        }
    R.oracle_ok = ok;
    if (!ok) R.report += "constructed right adjoint does not agree with the oracle\n";
  }
  CNat paMate =
      mate_of_square(R.p1.cat, R.p2.cat, A.c1, A.c2, R.p1.projA, R.p2.projA, R.adj, R.adjA);
  R.pa_morphism_ok = mate_is_iso(A.c1, paMate);
  if (!R.pa_morphism_ok) R.report += "projection square is not a morphism of left adjoints\n";
  return R;
}

ReflectProbe pullback_la_reflect_probe(const PullbackLaResult& R, const LaIsofib& A,
                                       const LaIsofib& D, const Adjunction& adjD,
                                       const CFunctor& q1, const CFunctor& q2) {
  ReflectProbe out;
  CNat m1 = mate_of_square(D.c1, D.c2, R.p1.cat, R.p2.cat, q1, q2, adjD, R.adj);
  out.q_morphism = mate_is_iso(R.p1.cat, m1);
  CFunctor top = cf_compose(R.p1.projA, q1);
  CFunctor bottom = cf_compose(R.p2.projA, q2);
  CNat m2 = mate_of_square(D.c1, D.c2, A.c1, A.c2, top, bottom, adjD, R.adjA);
  out.paq_morphism = mate_is_iso(A.c1, m2);
  return out;
}

JointReflectReport jointly_reflect_lali_check(
    const LaIsofib& L1, const LaIsofib& L2, const Adjunction& lali1, const Adjunction& lali2,
    const FinCat& C1, const FinCat& C2, const CFunctor& C, const Adjunction& laliC,
    const CFunctor& q1, const CFunctor& q2) {
  (void)C;
  PullbackCat E = fincat_product(L1.c1, L2.c1);
  PullbackCat Bp = fincat_product(L1.c2, L2.c2);
  Adjunction lali;
  for (const auto& o : E.cat.objects)
    lali.left.ob[o] =
        Bp.object_id(L1.p.ob.at(E.projA.ob.at(o)), L2.p.ob.at(E.projB.ob.at(o)));
  for (const auto& m : E.cat.morphisms)
    lali.left.mor[m] =
        Bp.morphism_id(L1.p.mor.at(E.projA.mor.at(m)), L2.p.mor.at(E.projB.mor.at(m)));
  for (const auto& b : Bp.cat.objects)
    lali.right.ob[b] =
        E.object_id(lali1.right.ob.at(Bp.projA.ob.at(b)), lali2.right.ob.at(Bp.projB.ob.at(b)));
  for (const auto& g : Bp.cat.morphisms)
    lali.right.mor[g] = E.morphism_id(lali1.right.mor.at(Bp.projA.mor.at(g)),
                                      lali2.right.mor.at(Bp.projB.mor.at(g)));
  for (const auto& e : E.cat.objects)
    lali.unit.comp[e] =
        E.morphism_id(lali1.unit.comp.at(E.projA.ob.at(e)), lali2.unit.comp.at(E.projB.ob.at(e)));
  for (const auto& b : Bp.cat.objects) lali.counit.comp[b] = Bp.cat.id_of(b);
  validate_adjunction(E.cat, Bp.cat, lali);
  JointReflectReport rep;
  CNat mq = mate_of_square(C1, C2, E.cat, Bp.cat, q1, q2, laliC, lali);
  rep.q_lali_morphism = mate_is_iso(E.cat, mq);
  CNat mq1 = mate_of_square(C1, C2, L1.c1, L1.c2, cf_compose(E.projA, q1),
                            cf_compose(Bp.projA, q2), laliC, lali1);
  CNat mq2 = mate_of_square(C1, C2, L2.c1, L2.c2, cf_compose(E.projB, q1),
                            cf_compose(Bp.projB, q2), laliC, lali2);
  rep.all_projections = mate_is_iso(L1.c1, mq1) && mate_is_iso(L2.c1, mq2);
  rep.mate_equation = nat_apply(E.projA, mq) == mq1 && nat_apply(E.projB, mq) == mq2;
  return rep;
}

}  // namespace rigged
