#include "rigged/catkit.hpp"

#include <algorithm>

namespace rigged {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

const std::string& lk(const std::map<std::string, std::string>& m, const std::string& k,
                      const char* what) {
  auto it = m.find(k);
  if (it == m.end()) fail(std::string(what) + ": unknown key '" + k + "'");
  return it->second;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

const std::string& FinCat::dom_of(const std::string& m) const { return lk(dom, m, "dom"); }
const std::string& FinCat::cod_of(const std::string& m) const { return lk(cod, m, "cod"); }
const std::string& FinCat::id_of(const std::string& o) const { return lk(identity, o, "identity"); }

const std::string& FinCat::compose(const std::string& g, const std::string& f) const {
  auto it = comp.find({g, f});
  if (it == comp.end()) fail("compose: morphisms '" + g + "' and '" + f + "' not composable");
  return it->second;
}

bool FinCat::is_id(const std::string& m) const {
  auto it = identity.find(dom_of(m));
  return it != identity.end() && it->second == m;
}

bool FinCat::has_object(const std::string& o) const {
  return identity.count(o) != 0 ||
         std::find(objects.begin(), objects.end(), o) != objects.end();
}

bool FinCat::has_morphism(const std::string& m) const { return dom.count(m) != 0; }

std::optional<std::string> FinCat::inverse(const std::string& m) const {
  const std::string &a = dom_of(m), &b = cod_of(m);
  for (const auto& f : hom(b, a))
    if (compose(f, m) == id_of(a) && compose(m, f) == id_of(b)) return f;
  return std::nullopt;
}

std::vector<std::string> FinCat::hom(const std::string& a, const std::string& b) const {
  std::vector<std::string> out;
  for (const auto& m : morphisms)
    if (dom.at(m) == a && cod.at(m) == b) out.push_back(m);
  return out;
}

void FinCat::add_object(const std::string& o) {
  if (has_object(o)) fail("add_object: duplicate object id '" + o + "'");
  objects.push_back(o);
}

void FinCat::add_morphism(const std::string& m, const std::string& d, const std::string& c) {
  if (dom.count(m)) fail("add_morphism: duplicate morphism id '" + m + "'");
  morphisms.push_back(m);
  dom[m] = d;
  cod[m] = c;
}

void FinCat::sort_all() {
  std::sort(objects.begin(), objects.end());
  std::sort(morphisms.begin(), morphisms.end());
}

void FinCat::validate() const {
  std::set<std::string> obs(objects.begin(), objects.end());
  if (obs.size() != objects.size()) fail("validate: duplicate object ids");
  std::set<std::string> mors(morphisms.begin(), morphisms.end());
  if (mors.size() != morphisms.size()) fail("validate: duplicate morphism ids");
  for (const auto& m : morphisms)
    if (!obs.count(dom_of(m)) || !obs.count(cod_of(m)))
      fail("validate: morphism '" + m + "' has unknown endpoint");
  if (identity.size() != objects.size()) fail("validate: identity table size mismatch");
  for (const auto& o : objects) {
    const std::string& i = id_of(o);
    if (!mors.count(i) || dom_of(i) != o || cod_of(i) != o)
      fail("validate: bad identity on '" + o + "'");
  }
  size_t composable = 0;
  for (const auto& f : morphisms)
    for (const auto& g : morphisms) {
      if (cod_of(f) != dom_of(g)) continue;
      ++composable;
      const std::string& gf = compose(g, f);
      if (!mors.count(gf) || dom_of(gf) != dom_of(f) || cod_of(gf) != cod_of(g))
        fail("validate: bad composite of '" + g + "' after '" + f + "'");
    }
  if (comp.size() != composable) fail("validate: spurious composition entries");
  for (const auto& f : morphisms)
    if (compose(f, id_of(dom_of(f))) != f || compose(id_of(cod_of(f)), f) != f)
      fail("validate: unit law fails at '" + f + "'");
  for (const auto& f : morphisms)
    for (const auto& g : morphisms) {
      if (cod_of(f) != dom_of(g)) continue;
      for (const auto& h : morphisms) {
        if (cod_of(g) != dom_of(h)) continue;
        if (compose(compose(h, g), f) != compose(h, compose(g, f)))
          fail("validate: associativity fails at ('" + h + "','" + g + "','" + f + "')");
      }
    }
}

FinCat fincat_poset(const std::vector<std::string>& obs,
                    const std::vector<std::pair<std::string, std::string>>& rel) {
  std::map<std::string, size_t> idx;
  for (size_t i = 0; i < obs.size(); ++i) {
    if (obs[i].find("<=") != std::string::npos) fail("fincat_poset: object id contains '<='");
    if (idx.count(obs[i])) fail("fincat_poset: duplicate object");
    idx[obs[i]] = i;
  }
  size_t n = obs.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& [a, b] : rel) reach[idx.at(a)][idx.at(b)] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  FinCat C;
  for (const auto& o : obs) C.add_object(o);
  auto mid = [&](size_t i, size_t j) { return obs[i] + "<=" + obs[j]; };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (reach[i][j]) C.add_morphism(mid(i, j), obs[i], obs[j]);
  for (size_t i = 0; i < n; ++i) C.identity[obs[i]] = mid(i, i);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!reach[i][j]) continue;
      for (size_t k = 0; k < n; ++k)
        if (reach[j][k]) C.comp[{mid(j, k), mid(i, j)}] = mid(i, k);
    }
  C.sort_all();
  return C;
}

FinCat fincat_linear(int n) {
  if (n < 0) fail("fincat_linear: negative length");
  std::vector<std::string> obs;
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i <= n; ++i) obs.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) rel.push_back({obs[i], obs[i + 1]});
  return fincat_poset(obs, rel);
}

FinCat fincat_discrete(const std::vector<std::string>& obs) {
  FinCat C;
  for (const auto& o : obs) {
    C.add_object(o);
    C.add_morphism("1_" + o, o, o);
    C.identity[o] = "1_" + o;
    C.comp[{"1_" + o, "1_" + o}] = "1_" + o;
  }
  C.sort_all();
  return C;
}

FinCat fincat_walking_iso() {
  FinCat C;
  C.add_object("x");
  C.add_object("y");
  C.add_morphism("1_x", "x", "x");
  C.add_morphism("1_y", "y", "y");
  C.add_morphism("f", "x", "y");
  C.add_morphism("g", "y", "x");
  C.identity["x"] = "1_x";
  C.identity["y"] = "1_y";
  for (const auto& m : C.morphisms) {
    C.comp[{m, C.id_of(C.dom_of(m))}] = m;
    C.comp[{C.id_of(C.cod_of(m)), m}] = m;
  }
  C.comp[{"g", "f"}] = "1_x";
  C.comp[{"f", "g"}] = "1_y";
  C.sort_all();
  return C;
}

FinCat fincat_opposite(const FinCat& C) {
  FinCat D;
  D.objects = C.objects;
  D.morphisms = C.morphisms;
  D.identity = C.identity;
  for (const auto& m : C.morphisms) {
    D.dom[m] = C.cod_of(m);
    D.cod[m] = C.dom_of(m);
  }
  for (const auto& [gf, c] : C.comp) D.comp[{gf.second, gf.first}] = c;
  return D;
}

void validate_cfunctor(const FinCat& A, const FinCat& B, const CFunctor& F) {
  if (F.ob.size() != A.objects.size()) fail("functor: object table size mismatch");
  for (const auto& a : A.objects)
    if (!B.has_object(lk(F.ob, a, "functor ob"))) fail("functor: image object missing");
  if (F.mor.size() != A.morphisms.size()) fail("functor: morphism table size mismatch");
  for (const auto& m : A.morphisms) {
    const std::string& fm = lk(F.mor, m, "functor mor");
    if (!B.has_morphism(fm)) fail("functor: image morphism missing");
    if (B.dom_of(fm) != F.ob.at(A.dom_of(m)) || B.cod_of(fm) != F.ob.at(A.cod_of(m)))
      fail("functor: endpoints not preserved at '" + m + "'");
  }
  for (const auto& o : A.objects)
    if (F.mor.at(A.id_of(o)) != B.id_of(F.ob.at(o)))
      fail("functor: identity not preserved at '" + o + "'");
  for (const auto& f : A.morphisms)
    for (const auto& g : A.morphisms) {
      if (A.cod_of(f) != A.dom_of(g)) continue;
      if (F.mor.at(A.compose(g, f)) != B.compose(F.mor.at(g), F.mor.at(f)))
        fail("functor: composition not preserved at ('" + g + "','" + f + "')");
    }
}

CFunctor cf_identity(const FinCat& C) {
  CFunctor F;
  for (const auto& o : C.objects) F.ob[o] = o;
  for (const auto& m : C.morphisms) F.mor[m] = m;
  return F;
}

CFunctor cf_compose(const CFunctor& G, const CFunctor& F) {
  CFunctor H;
  for (const auto& [a, fa] : F.ob) H.ob[a] = lk(G.ob, fa, "cf_compose ob");
  for (const auto& [m, fm] : F.mor) H.mor[m] = lk(G.mor, fm, "cf_compose mor");
  return H;
}

void validate_cnat(const FinCat& A, const FinCat& B, const CFunctor& F, const CFunctor& G,
                   const CNat& n) {
  if (n.comp.size() != A.objects.size()) fail("nat: component table size mismatch");
  for (const auto& a : A.objects) {
    const std::string& na = lk(n.comp, a, "nat comp");
    if (!B.has_morphism(na) || B.dom_of(na) != F.ob.at(a) || B.cod_of(na) != G.ob.at(a))
      fail("nat: bad component at '" + a + "'");
  }
  for (const auto& m : A.morphisms) {
    const std::string &a = A.dom_of(m), &a2 = A.cod_of(m);
    if (B.compose(n.comp.at(a2), F.mor.at(m)) != B.compose(G.mor.at(m), n.comp.at(a)))
      fail("nat: naturality fails at '" + m + "'");
  }
}

CNat nat_identity(const FinCat& A, const FinCat& B, const CFunctor& F) {
  CNat n;
  for (const auto& a : A.objects) n.comp[a] = B.id_of(F.ob.at(a));
  return n;
}

CNat nat_vcomp(const FinCat& B, const CNat& n2, const CNat& n1) {
  CNat n;
  for (const auto& [a, m1] : n1.comp) n.comp[a] = B.compose(lk(n2.comp, a, "nat_vcomp"), m1);
  return n;
}

CNat nat_apply(const CFunctor& H, const CNat& n) {
  CNat r;
  for (const auto& [a, m] : n.comp) r.comp[a] = lk(H.mor, m, "nat_apply");
  return r;
}

CNat nat_restrict(const FinCat& A0, const CFunctor& K, const CNat& n) {
  CNat r;
  for (const auto& a0 : A0.objects) r.comp[a0] = lk(n.comp, lk(K.ob, a0, "nat_restrict ob"),
                                                    "nat_restrict comp");
  return r;
}

CNat nat_inverse(const FinCat& B, const CNat& n) {
  CNat r;
  for (const auto& [a, m] : n.comp) {
    auto inv = B.inverse(m);
    if (!inv) fail("nat_inverse: component '" + m + "' is not invertible");
    r.comp[a] = *inv;
  }
  return r;
}

bool nat_iso(const FinCat& B, const CNat& n) {
  for (const auto& [a, m] : n.comp)
    if (!B.is_iso(m)) return false;
  return true;
}

void validate_adjunction(const FinCat& A, const FinCat& B, const Adjunction& adj) {
  validate_cfunctor(A, B, adj.left);
  validate_cfunctor(B, A, adj.right);
  validate_cnat(A, A, cf_identity(A), cf_compose(adj.right, adj.left), adj.unit);
  validate_cnat(B, B, cf_compose(adj.left, adj.right), cf_identity(B), adj.counit);
  for (const auto& a : A.objects) {
    const std::string& fa = adj.left.ob.at(a);
    if (B.compose(adj.counit.comp.at(fa), adj.left.mor.at(adj.unit.comp.at(a))) != B.id_of(fa))
      fail("adjunction: first triangle identity fails at '" + a + "'");
  }
  for (const auto& b : B.objects) {
    const std::string& ub = adj.right.ob.at(b);
    if (A.compose(adj.right.mor.at(adj.counit.comp.at(b)), adj.unit.comp.at(ub)) != A.id_of(ub))
      fail("adjunction: second triangle identity fails at '" + b + "'");
  }
}

std::optional<Adjunction> search_right_adjoint(const FinCat& A, const FinCat& B,
                                               const CFunctor& F) {
  CFunctor U;
  CNat unit, counit;
  std::vector<std::string> aobs = sorted(A.objects);
  for (const auto& b : B.objects) {
    bool found = false;
    for (const auto& a0 : aobs) {
      for (const auto& phi0 : sorted(B.hom(F.ob.at(a0), b))) {
        bool ok = true;
        for (const auto& a : A.objects) {
          for (const auto& phi : B.hom(F.ob.at(a), b)) {
            int cnt = 0;
            for (const auto& alpha : A.hom(a, a0))
              if (B.compose(phi0, F.mor.at(alpha)) == phi) ++cnt;
            if (cnt != 1) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (ok) {
          U.ob[b] = a0;
          counit.comp[b] = phi0;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  for (const auto& g : B.morphisms) {
    const std::string &b = B.dom_of(g), &b2 = B.cod_of(g);
    std::vector<std::string> cands;
    for (const auto& alpha : A.hom(U.ob.at(b), U.ob.at(b2)))
      if (B.compose(counit.comp.at(b2), F.mor.at(alpha)) == B.compose(g, counit.comp.at(b)))
        cands.push_back(alpha);
    if (cands.size() != 1) fail("search_right_adjoint: universal arrow not unique");
    U.mor[g] = cands[0];
  }
  for (const auto& a : A.objects) {
    const std::string& fa = F.ob.at(a);
    std::vector<std::string> cands;
    for (const auto& m : A.hom(a, U.ob.at(fa)))
      if (B.compose(counit.comp.at(fa), F.mor.at(m)) == B.id_of(fa)) cands.push_back(m);
    if (cands.size() != 1) fail("search_right_adjoint: unit component not unique");
    unit.comp[a] = cands[0];
  }
  Adjunction adj{F, U, unit, counit};
  validate_adjunction(A, B, adj);
  return adj;
}

std::optional<Adjunction> search_left_adjoint(const FinCat& A, const FinCat& B,
                                              const CFunctor& F) {
  CFunctor L;
  CNat unit, counit;
  std::vector<std::string> aobs = sorted(A.objects);
  for (const auto& b : B.objects) {
    bool found = false;
    for (const auto& a0 : aobs) {
      for (const auto& phi0 : sorted(B.hom(b, F.ob.at(a0)))) {
        bool ok = true;
        for (const auto& a : A.objects) {
          for (const auto& phi : B.hom(b, F.ob.at(a))) {
            int cnt = 0;
            for (const auto& alpha : A.hom(a0, a))
              if (B.compose(F.mor.at(alpha), phi0) == phi) ++cnt;
            if (cnt != 1) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (ok) {
          L.ob[b] = a0;
          unit.comp[b] = phi0;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  for (const auto& g : B.morphisms) {
    const std::string &b = B.dom_of(g), &b2 = B.cod_of(g);
    std::vector<std::string> cands;
    for (const auto& alpha : A.hom(L.ob.at(b), L.ob.at(b2)))
      if (B.compose(F.mor.at(alpha), unit.comp.at(b)) == B.compose(unit.comp.at(b2), g))
        cands.push_back(alpha);
    if (cands.size() != 1) fail("search_left_adjoint: universal arrow not unique");
    L.mor[g] = cands[0];
  }
  for (const auto& a : A.objects) {
    const std::string& fa = F.ob.at(a);
    std::vector<std::string> cands;
    for (const auto& m : A.hom(L.ob.at(fa), a))
      if (B.compose(F.mor.at(m), unit.comp.at(fa)) == B.id_of(fa)) cands.push_back(m);
    if (cands.size() != 1) fail("search_left_adjoint: counit component not unique");
    counit.comp[a] = cands[0];
  }
  Adjunction adj{L, F, unit, counit};
  validate_adjunction(B, A, adj);
  return adj;
}

bool is_isofibration(const FinCat& E, const FinCat& B, const CFunctor& p) {
  for (const auto& e : E.objects) {
    const std::string& pe = p.ob.at(e);
    for (const auto& phi : B.morphisms) {
      if (B.dom_of(phi) != pe || !B.is_iso(phi)) continue;
      bool lifted = false;
      for (const auto& psi : E.morphisms)
        if (E.dom_of(psi) == e && p.mor.at(psi) == phi && E.is_iso(psi)) {
          lifted = true;
          break;
        }
      if (!lifted) return false;
    }
  }
  return true;
}

std::string iso_lift(const FinCat& E, const FinCat& B, const CFunctor& p,
                     const std::string& phi, const std::string& e) {
  if (B.dom_of(phi) != p.ob.at(e)) fail("iso_lift: morphism does not start under the object");
  if (!B.is_iso(phi)) fail("iso_lift: morphism is not invertible");
  for (const auto& psi : sorted(E.morphisms))
    if (E.dom_of(psi) == e && p.mor.at(psi) == phi && E.is_iso(psi)) return psi;
  fail("iso_lift: no lift exists");
}

std::optional<Adjunction> is_lali(const FinCat& E, const FinCat& B, const CFunctor& p) {
  if (!is_isofibration(E, B, p)) fail("is_lali: functor is not an isofibration");
  auto adj = search_right_adjoint(E, B, p);
  if (!adj) return std::nullopt;
  if (!nat_iso(B, adj->counit)) return std::nullopt;
  /* conjugate the right adjoint so that the counit becomes the identity */
  std::map<std::string, std::string> psi, psi_inv;
  for (const auto& b : B.objects) {
    psi[b] = iso_lift(E, B, p, adj->counit.comp.at(b), adj->right.ob.at(b));
    psi_inv[b] = *E.inverse(psi[b]);
  }
  CFunctor u;
  CNat unit, counit;
  for (const auto& b : B.objects) u.ob[b] = E.cod_of(psi.at(b));
  for (const auto& g : B.morphisms) {
    const std::string &b = B.dom_of(g), &b2 = B.cod_of(g);
    u.mor[g] = E.compose(psi.at(b2), E.compose(adj->right.mor.at(g), psi_inv.at(b)));
  }
  for (const auto& e : E.objects)
    unit.comp[e] = E.compose(psi.at(p.ob.at(e)), adj->unit.comp.at(e));
  for (const auto& b : B.objects) counit.comp[b] = B.id_of(b);
  Adjunction out{p, u, unit, counit};
  validate_adjunction(E, B, out);
  return out;
}

std::optional<Adjunction> is_rali(const FinCat& E, const FinCat& B, const CFunctor& p) {
  if (!is_isofibration(E, B, p)) fail("is_rali: functor is not an isofibration");
  auto adj = search_left_adjoint(E, B, p);
  if (!adj) return std::nullopt;
  if (!nat_iso(B, adj->unit)) return std::nullopt;
  /* conjugate the left adjoint so that the unit becomes the identity */
  std::map<std::string, std::string> psi, psi_inv;
  for (const auto& b : B.objects) {
    psi[b] = iso_lift(E, B, p, *B.inverse(adj->unit.comp.at(b)), adj->left.ob.at(b));
    psi_inv[b] = *E.inverse(psi[b]);
  }
  CFunctor v;
  CNat unit, counit;
  for (const auto& b : B.objects) v.ob[b] = E.cod_of(psi.at(b));
  for (const auto& g : B.morphisms) {
    const std::string &b = B.dom_of(g), &b2 = B.cod_of(g);
    v.mor[g] = E.compose(psi.at(b2), E.compose(adj->left.mor.at(g), psi_inv.at(b)));
  }
  for (const auto& b : B.objects) unit.comp[b] = B.id_of(b);
  for (const auto& e : E.objects)
    counit.comp[e] = E.compose(adj->counit.comp.at(e), psi_inv.at(p.ob.at(e)));
  Adjunction out{v, p, unit, counit};
  validate_adjunction(B, E, out);
  return out;
}

std::string CommaCat::object_id(const std::string& a, const std::string& b,
                                const std::string& phi) const {
  std::string id = "(" + a + "|" + b + "|" + phi + ")";
  if (!obj_parts.count(id)) fail("comma object_id: no object '" + id + "'");
  return id;
}

std::string CommaCat::morphism_id(const std::string& alpha, const std::string& beta,
                                  const std::string& src, const std::string& tgt) const {
  std::string id = "(" + alpha + "|" + beta + "|" + src + "|" + tgt + ")";
  if (!mor_parts.count(id)) fail("comma morphism_id: no morphism '" + id + "'");
  return id;
}

CommaCat comma(const FinCat& A, const FinCat& B, const FinCat& C, const CFunctor& F,
               const CFunctor& G) {
  CommaCat R;
  for (const auto& a : A.objects)
    for (const auto& b : B.objects)
      for (const auto& phi : C.hom(F.ob.at(a), G.ob.at(b))) {
        std::string id = "(" + a + "|" + b + "|" + phi + ")";
        R.cat.add_object(id);
        R.obj_parts[id] = {a, b, phi};
        R.projA.ob[id] = a;
        R.projB.ob[id] = b;
      }
  for (const auto& o : R.cat.objects) {
    const auto& [a, b, phi] = R.obj_parts.at(o);
    for (const auto& o2 : R.cat.objects) {
      const auto& [a2, b2, phi2] = R.obj_parts.at(o2);
      for (const auto& alpha : A.hom(a, a2))
        for (const auto& beta : B.hom(b, b2)) {
          if (C.compose(phi2, F.mor.at(alpha)) != C.compose(G.mor.at(beta), phi)) continue;
          std::string id = "(" + alpha + "|" + beta + "|" + o + "|" + o2 + ")";
          R.cat.add_morphism(id, o, o2);
          R.mor_parts[id] = {alpha, beta};
          R.projA.mor[id] = alpha;
          R.projB.mor[id] = beta;
        }
    }
  }
  for (const auto& o : R.cat.objects) {
    const auto& [a, b, phi] = R.obj_parts.at(o);
    (void)phi;
    R.cat.identity[o] = "(" + A.id_of(a) + "|" + B.id_of(b) + "|" + o + "|" + o + ")";
  }
  for (const auto& m1 : R.cat.morphisms) {
    const std::string& mid1 = R.cat.cod_of(m1);
    for (const auto& m2 : R.cat.morphisms) {
      if (R.cat.dom_of(m2) != mid1) continue;
      const auto& p1 = R.mor_parts.at(m1);
      const auto& p2 = R.mor_parts.at(m2);
      R.cat.comp[{m2, m1}] = "(" + A.compose(p2[0], p1[0]) + "|" + B.compose(p2[1], p1[1]) +
                             "|" + R.cat.dom_of(m1) + "|" + R.cat.cod_of(m2) + ")";
    }
  }
  R.cat.sort_all();
  return R;
}

CommaCat arrow_cat(const FinCat& C) { return comma(C, C, C, cf_identity(C), cf_identity(C)); }

const std::string& PullbackCat::object_id(const std::string& a, const std::string& b) const {
  auto it = obj_lookup.find({a, b});
  if (it == obj_lookup.end()) fail("pullback object_id: no object (" + a + "," + b + ")");
  return it->second;
}

const std::string& PullbackCat::morphism_id(const std::string& f, const std::string& g) const {
  auto it = mor_lookup.find({f, g});
  if (it == mor_lookup.end()) fail("pullback morphism_id: no morphism (" + f + "," + g + ")");
  return it->second;
}

PullbackCat fincat_pullback(const FinCat& A, const FinCat& B, const FinCat& C,
                            const CFunctor& F, const CFunctor& G) {
  (void)C;
  PullbackCat P;
  for (const auto& a : A.objects)
    for (const auto& b : B.objects) {
      if (F.ob.at(a) != G.ob.at(b)) continue;
      std::string id = "(" + a + "," + b + ")";
      P.cat.add_object(id);
      P.obj_lookup[{a, b}] = id;
      P.projA.ob[id] = a;
      P.projB.ob[id] = b;
    }
  for (const auto& f : A.morphisms)
    for (const auto& g : B.morphisms) {
      if (F.mor.at(f) != G.mor.at(g)) continue;
      std::string id = "(" + f + "," + g + ")";
      P.cat.add_morphism(id, P.object_id(A.dom_of(f), B.dom_of(g)),
                         P.object_id(A.cod_of(f), B.cod_of(g)));
      P.mor_lookup[{f, g}] = id;
      P.projA.mor[id] = f;
      P.projB.mor[id] = g;
    }
  for (const auto& o : P.cat.objects)
    P.cat.identity[o] = P.morphism_id(A.id_of(P.projA.ob.at(o)), B.id_of(P.projB.ob.at(o)));
  for (const auto& m1 : P.cat.morphisms)
    for (const auto& m2 : P.cat.morphisms) {
      if (P.cat.dom_of(m2) != P.cat.cod_of(m1)) continue;
      P.cat.comp[{m2, m1}] =
          P.morphism_id(A.compose(P.projA.mor.at(m2), P.projA.mor.at(m1)),
                        B.compose(P.projB.mor.at(m2), P.projB.mor.at(m1)));
    }
  P.cat.sort_all();
  return P;
}

PullbackCat fincat_product(const FinCat& A, const FinCat& B) {
  FinCat T = fincat_discrete({"*"});
  CFunctor cA, cB;
  for (const auto& o : A.objects) cA.ob[o] = "*";
  for (const auto& m : A.morphisms) cA.mor[m] = "1_*";
  for (const auto& o : B.objects) cB.ob[o] = "*";
  for (const auto& m : B.morphisms) cB.mor[m] = "1_*";
  return fincat_pullback(A, B, T, cA, cB);
}

CNat mate_of_square(const FinCat& A1, const FinCat& B1, const FinCat& A2, const FinCat& B2,
                    const CFunctor& top, const CFunctor& bottom, const Adjunction& adj1,
                    const Adjunction& adj2) {
  (void)A1;
  (void)B2;
  if (!(cf_compose(adj2.left, top) == cf_compose(bottom, adj1.left)))
    fail("mate_of_square: square does not commute");
  CNat th;
  for (const auto& b : B1.objects) {
    const std::string& a2 = top.ob.at(adj1.right.ob.at(b));
    th.comp[b] = A2.compose(adj2.right.mor.at(bottom.mor.at(adj1.counit.comp.at(b))),
                            adj2.unit.comp.at(a2));
  }
  return th;
}

bool mate_is_iso(const FinCat& A2, const CNat& mate) { return nat_iso(A2, mate); }

namespace {

/* Identity-counit lali structure on the comma projection of a left adjoint. */
Adjunction comma_lali_structure(const FinCat& A, const FinCat& B, const CommaCat& Cm,
                                const Adjunction& adj) {
  CFunctor u;
  CNat unit, counit;
  for (const auto& b : B.objects)
    u.ob[b] = Cm.object_id(adj.right.ob.at(b), b, adj.counit.comp.at(b));
  for (const auto& g : B.morphisms)
    u.mor[g] = Cm.morphism_id(adj.right.mor.at(g), g, u.ob.at(B.dom_of(g)),
                              u.ob.at(B.cod_of(g)));
  for (const auto& o : Cm.cat.objects) {
    const auto& [a, b, phi] = Cm.obj_parts.at(o);
    std::string sharp = A.compose(adj.right.mor.at(phi), adj.unit.comp.at(a));
    unit.comp[o] = Cm.morphism_id(sharp, B.id_of(b), o, u.ob.at(b));
  }
  for (const auto& b : B.objects) counit.comp[b] = B.id_of(b);
  Adjunction out{Cm.projB, u, unit, counit};
  validate_adjunction(Cm.cat, B, out);
  return out;
}

}  // namespace

LaLaliReport la_iff_lali_check(const FinCat& A, const FinCat& B, const CFunctor& F) {
  LaLaliReport rep;
  auto adj = search_right_adjoint(A, B, F);
  rep.left_adjoint = adj.has_value();
  rep.adj = adj;
  CommaCat Cm = comma(A, B, B, F, cf_identity(B));
  try {
    auto lali = is_lali(Cm.cat, B, Cm.projB);
    rep.comma_lali = lali.has_value();
  } catch (const std::exception& ex) {
    rep.witness = std::string("comma projection: ") + ex.what();
    return rep;
  }
  if (rep.left_adjoint != rep.comma_lali) {
    rep.witness = "adjoint search and comma projection disagree";
    return rep;
  }
  if (adj) {
    try {
      rep.comma_adj = comma_lali_structure(A, B, Cm, *adj);
    } catch (const std::exception& ex) {
      rep.witness = std::string("explicit comma structure: ") + ex.what();
    }
  }
  return rep;
}

MateTransferReport mate_transfer_check(const FinCat& A1, const FinCat& B1, const FinCat& A2,
                                       const FinCat& B2, const CFunctor& top,
                                       const CFunctor& bottom, const Adjunction& adj1,
                                       const Adjunction& adj2) {
  MateTransferReport rep;
  rep.theta = mate_of_square(A1, B1, A2, B2, top, bottom, adj1, adj2);
  rep.la_morphism = mate_is_iso(A2, rep.theta);
  CommaCat Cm1 = comma(A1, B1, B1, adj1.left, cf_identity(B1));
  CommaCat Cm2 = comma(A2, B2, B2, adj2.left, cf_identity(B2));
  Adjunction lali1 = comma_lali_structure(A1, B1, Cm1, adj1);
  Adjunction lali2 = comma_lali_structure(A2, B2, Cm2, adj2);
  CFunctor bb;  /* (a, b, phi) |-> (top a, bottom b, bottom phi) */
  for (const auto& o : Cm1.cat.objects) {
    const auto& [a, b, phi] = Cm1.obj_parts.at(o);
    bb.ob[o] = Cm2.object_id(top.ob.at(a), bottom.ob.at(b), bottom.mor.at(phi));
  }
  for (const auto& m : Cm1.cat.morphisms) {
    const auto& p = Cm1.mor_parts.at(m);
    bb.mor[m] = Cm2.morphism_id(top.mor.at(p[0]), bottom.mor.at(p[1]),
                                bb.ob.at(Cm1.cat.dom_of(m)), bb.ob.at(Cm1.cat.cod_of(m)));
  }
  validate_cfunctor(Cm1.cat, Cm2.cat, bb);
  rep.comma_mate = mate_of_square(Cm1.cat, B1, Cm2.cat, B2, bb, bottom, lali1, lali2);
  rep.lali_morphism = mate_is_iso(Cm2.cat, rep.comma_mate);
  rep.projection_equation = true;
  for (const auto& b : B1.objects)
    if (Cm2.projA.mor.at(rep.comma_mate.comp.at(b)) != rep.theta.comp.at(b)) {
      rep.projection_equation = false;
      rep.witness = "comma mate does not project onto the adjoint mate at '" + b + "'";
      break;
    }
  return rep;
}

bool is_cartesian_morphism(const FinCat& E, const FinCat& B, const CFunctor& p,
                           const std::string& psi) {
  const std::string &e1 = E.dom_of(psi), &e = E.cod_of(psi);
  const std::string& ppsi = p.mor.at(psi);
  for (const auto& e2 : E.objects)
    for (const auto& g : E.hom(e2, e))
      for (const auto& h : B.hom(p.ob.at(e2), p.ob.at(e1))) {
        if (B.compose(ppsi, h) != p.mor.at(g)) continue;
        int cnt = 0;
        for (const auto& k : E.hom(e2, e1))
          if (p.mor.at(k) == h && E.compose(psi, k) == g) ++cnt;
        if (cnt != 1) return false;
      }
  return true;
}

namespace {

std::optional<std::string> find_cartesian_lift(const FinCat& E, const FinCat& B,
                                               const CFunctor& p, const std::string& phi,
                                               const std::string& e) {
  for (const auto& psi : sorted(E.morphisms))
    if (E.cod_of(psi) == e && p.mor.at(psi) == phi && is_cartesian_morphism(E, B, p, psi))
      return psi;
  return std::nullopt;
}

}  // namespace

bool is_grothendieck_fibration(const FinCat& E, const FinCat& B, const CFunctor& p) {
  for (const auto& e : E.objects)
    for (const auto& phi : B.morphisms) {
      if (B.cod_of(phi) != p.ob.at(e)) continue;
      if (!find_cartesian_lift(E, B, p, phi, e)) return false;
    }
  return true;
}

std::string cartesian_lift(const FinCat& E, const FinCat& B, const CFunctor& p,
                           const std::string& phi, const std::string& e) {
  if (B.cod_of(phi) != p.ob.at(e)) fail("cartesian_lift: morphism does not end under object");
  auto r = find_cartesian_lift(E, B, p, phi, e);
  if (!r) fail("cartesian_lift: no cartesian lift of '" + phi + "' at '" + e + "'");
  return *r;
}

std::string dot_fincat(const FinCat& C, const std::string& name) {
  auto esc = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r.push_back('\\');
      r.push_back(c);
    }
    return r;
  };
  std::string out = "digraph \"" + esc(name) + "\" {\n";
  for (const auto& o : C.objects) out += "  \"" + esc(o) + "\";\n";
  for (const auto& m : C.morphisms) {
    if (C.is_id(m)) continue;
    out += "  \"" + esc(C.dom_of(m)) + "\" -> \"" + esc(C.cod_of(m)) + "\" [label=\"" +
           esc(m) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace rigged
