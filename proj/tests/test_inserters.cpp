/* Tests for rigged limits over simplex-boundary shapes: marked powers, the
   pullback and weighted-family presentations and their agreement, duality
   with the initially marked variant, the named specializations, and the
   algebra tower over a strict monad's nerve. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "rigged/inserters.hpp"

using namespace rigged;

static ESSet interval(const std::set<std::string>& tights) {
  ESSet T;
  T.loose = std_simplex(1);
  T.tight_vertices = tights;
  return T;
}

static SMap const_vertex_map(const SSet& S, const std::string& v) {
  SMap f;
  for (int d = 0; d < (int)S.cells.size(); ++d)
    for (auto& id : S.cells[d]) f.assignment[id] = deg_vertex_ref(v, d);
  return f;
}

/* The group with two elements as a one-object category. */
static FinCat zmod2() {
  FinCat C;
  C.add_object("*");
  C.add_morphism("e", "*", "*");
  C.add_morphism("s", "*", "*");
  C.identity["*"] = "e";
  C.comp[{"e", "e"}] = "e";
  C.comp[{"e", "s"}] = "s";
  C.comp[{"s", "e"}] = "s";
  C.comp[{"s", "s"}] = "e";
  C.sort_all();
  return C;
}

static StrictMonad identity_monad(const FinCat& C) {
  StrictMonad M;
  M.C = C;
  M.T = cf_identity(C);
  M.unit = nat_identity(C, C, M.T);
  M.mult = nat_identity(C, C, M.T);
  return M;
}

/* Everything collapses onto the top of the two-element chain. */
static StrictMonad const_top_monad() {
  StrictMonad M;
  M.C = fincat_linear(1);
  M.T.ob = {{"0", "1"}, {"1", "1"}};
  for (auto& m : M.C.morphisms) M.T.mor[m] = "1<=1";
  M.unit.comp = {{"0", "0<=1"}, {"1", "1<=1"}};
  M.mult.comp = {{"0", "1<=1"}, {"1", "1<=1"}};
  return M;
}

TEST_CASE("power by an all-tight point is the object itself") {
  ESSet T = interval({"1"});
  EHom P = power_inchordate(T, std_simplex(0), 2);
  SMap ev = ev_vertex(P.hom, std_simplex(0), T.loose, "0");
  CHECK(smap_iso(P.hom.hom, T.loose, ev));
  for (auto& v : P.hom.hom.cells[0])
    CHECK(P.esset.tight_vertex(v) == T.tight_vertex(ev.at(v).base));
}

TEST_CASE("power of the all-tight interval by the all-tight edge boundary") {
  ESSet T = chordate(std_simplex(1));
  EHom P = power_inchordate(T, boundary(1).sset, 2);
  CHECK(P.hom.hom.cell_count(0) == 4);
  CHECK(P.esset.tight_vertices.size() == 4);
}

TEST_CASE("power evaluations are tight and jointly reflect") {
  ESSet T = interval({"1"});
  SSet J = boundary(1).sset;
  EHom P = power_inchordate(T, J, 2);
  CHECK(P.hom.hom.cell_count(0) == 4);
  CHECK(P.esset.tight_vertices.size() == 1);
  std::vector<SMap> evs;
  for (auto& j : J.cells[0]) evs.push_back(ev_vertex(P.hom, J, T.loose, j));
  for (auto& ev : evs) CHECK(emap_tight(P.esset, T, ev));
  for (auto& v : P.hom.hom.cells[0]) {
    bool all = true;
    for (auto& ev : evs) all = all && T.tight_vertex(ev.at(v).base);
    CHECK(P.esset.tight_vertex(v) == all);
  }
}

TEST_CASE("marked powers by the simplex and its boundary") {
  ESSet T = interval({"1"});
  EHom B0 = rigged_power_boundary(T, 0, 2, true);
  CHECK(B0.hom.hom.cell_count(0) == 1);
  CHECK(B0.esset.tight_vertices.size() == 1);
  EHom S0 = rigged_power_simplex(T, 0, 2, true);
  SMap ev = ev_vertex(S0.hom, std_simplex(0), T.loose, "0");
  CHECK(smap_iso(S0.hom.hom, T.loose, ev));
  CHECK(S0.esset.tight_vertices.size() == 1);
  EHom S1t = rigged_power_simplex(T, 1, 2, true);
  SMap ev1 = ev_vertex(S1t.hom, std_simplex(1), T.loose, "1");
  for (auto& v : S1t.hom.hom.cells[0])
    CHECK(S1t.esset.tight_vertex(v) == T.tight_vertex(ev1.at(v).base));
  EHom S1i = rigged_power_simplex(T, 1, 2, false);
  SMap ev0 = ev_vertex(S1i.hom, std_simplex(1), T.loose, "0");
  for (auto& v : S1i.hom.hom.cells[0])
    CHECK(S1i.esset.tight_vertex(v) == T.tight_vertex(ev0.at(v).base));
}

TEST_CASE("dimension-zero limit is the product") {
  ESSet S = interval({"1"}), T = interval({"1"});
  RiggedDiagram d = product_diagram(S, T, 2);
  d.validate();
  RinsResult r = rins_pullback(d);
  EProduct pr = eproduct(S, T);
  CHECK(r.rins.loose.cell_count(0) == 4);
  CHECK(r.rins.loose.cell_count(1) == 5);
  CHECK(r.rins.loose.cell_count(2) == 2);
  CHECK(r.rins.tight_vertices.size() == 1);
  CHECK(pr.esset.tight_vertices.size() == 1);
  /* match through (projection, evaluation) against the plain product */
  SpecializedRins sp = specialize_product(S, T, 2);
  SMap phi;
  for (auto& lv : sp.r.rins.loose.cells)
    for (auto& id : lv)
      phi.assignment[id] = pairing(sp.r.rins.loose, S.loose, T.loose, pr.prod, sp.p1.map,
                                   sp.p2.map)
                               .at(id);
  CHECK(smap_iso(sp.r.rins.loose, pr.prod.sset, phi));
  for (auto& v : sp.r.rins.loose.cells[0])
    CHECK(sp.r.rins.tight_vertex(v) == pr.esset.tight_vertex(phi.at(v).base));
  CHECK(sp.p1.tight);
  CHECK(sp.p2.tight);
  CHECK(rins_reflects(d, r));
}

TEST_CASE("dimension-zero limit with an all-tight point target recovers the source") {
  ESSet S = interval({"1"});
  RiggedDiagram d = product_diagram(S, chordate(std_simplex(0)), 2);
  RinsResult r = rins_pullback(d);
  CHECK(smap_iso(r.rins.loose, S.loose, r.p.map));
  CHECK(r.rins.tight_vertices.size() == S.tight_vertices.size());
  for (auto& v : r.rins.loose.cells[0])
    CHECK(r.rins.tight_vertex(v) == S.tight_vertex(r.p.map.at(v).base));
}

TEST_CASE("interval family over the edge boundary has one vertex") {
  ESSet S = chordate(std_simplex(0)), T = chordate(std_simplex(1));
  SMap f = const_vertex_map(S.loose, "0"), g = const_vertex_map(S.loose, "1");
  RiggedDiagram d = inserter_diagram(S, T, f, g, 2);
  d.validate();
  RinsResult r = rins_pullback(d);
  CHECK(r.rins.loose.cell_count(0) == 1);
  CHECK(r.p.tight);
  CHECK(rins_reflects(d, r));
  /* the single family member evaluates to the endpoints */
  std::string v = r.rins.loose.cells[0][0];
  CHECK(rins_ev(d, r, 0).map.at(v).base == "0");
  CHECK(rins_ev(d, r, 1).map.at(v).base == "1");
}

TEST_CASE("equal families produce the degenerate filler vertex") {
  ESSet S = chordate(std_simplex(0)), T = chordate(std_simplex(1));
  SMap f = const_vertex_map(S.loose, "1");
  RiggedDiagram d = inserter_diagram(S, T, f, f, 2);
  RinsResult r = rins_pullback(d);
  CHECK(r.rins.loose.cell_count(0) == 1);
  std::string v = r.rins.loose.cells[0][0];
  SMap vm = r.pow_sx.hom.vertex_map(std_simplex(1), T.loose, r.cone.map.at(v).base);
  CHECK(!vm.at("0.1").deg.empty());
}

TEST_CASE("identity families over the marked interval and their probes") {
  ESSet S = interval({"1"}), T = interval({"1"});
  SMap idm = id_map(S.loose);
  SpecializedRins sp = specialize_inserter(S, T, idm, idm, 2);
  CHECK(sp.r.rins.loose.cell_count(0) == 2);
  CHECK(sp.r.rins.tight_vertices.size() == 1);
  CHECK(sp.p1.tight);
  CHECK(rins_reflects(sp.d, sp.r));
  /* probe maps out of the all-tight point: tight iff the projected image is */
  ESSet pt = chordate(std_simplex(0));
  for (auto& v : sp.r.rins.loose.cells[0]) {
    EMap q = emap(pt, sp.r.rins, const_vertex_map(pt.loose, v));
    EMap pq = ecompose(pt, sp.r.rins, S, sp.p1, q);
    CHECK(q.tight == pq.tight);
  }
}

TEST_CASE("joint probe reflection at dimension zero") {
  ESSet S = interval({"1"}), T = interval({"1"});
  SpecializedRins sp = specialize_product(S, T, 2);
  ESSet pt = chordate(std_simplex(0));
  for (auto& v : sp.r.rins.loose.cells[0]) {
    EMap q = emap(pt, sp.r.rins, const_vertex_map(pt.loose, v));
    EMap q1 = ecompose(pt, sp.r.rins, S, sp.p1, q);
    EMap q2 = ecompose(pt, sp.r.rins, T, sp.p2, q);
    CHECK(q.tight == (q1.tight && q2.tight));
  }
}

TEST_CASE("family object over a pair with composed legs counts edges") {
  ESSet A = chordate(std_simplex(1));
  SMap idm = id_map(A.loose);
  SpecializedRins sp = specialize_comma(A, A, A, idm, idm, 2);
  CHECK(sp.r.rins.loose.cell_count(0) == 3);
  CHECK(sp.r.rins.tight_vertices.size() == 3);
  CHECK(sp.p1.tight);
  CHECK(sp.p2.tight);
  CHECK(rins_reflects(sp.d, sp.r));
}

TEST_CASE("triangle family with equal sides is inhabited by the degenerate simplex") {
  ESSet S = chordate(std_simplex(0)), T = chordate(std_simplex(1));
  SSet d1 = std_simplex(1);
  ProductSSet P1 = product(d1, S.loose);
  SMap fm;
  for (auto& lv : P1.sset.cells)
    for (auto& id : lv) fm.assignment[id] = P1.parts.at(id).first;
  SpecializedRins sp = specialize_equifier(S, T, fm, fm, 2);
  CHECK(sp.r.rins.loose.cell_count(0) == 1);
  std::string v = sp.r.rins.loose.cells[0][0];
  SMap vm = sp.r.pow_sx.hom.vertex_map(std_simplex(2), T.loose, sp.r.cone.map.at(v).base);
  CHECK(!vm.at("0.1.2").deg.empty());
  CHECK(rins_reflects(sp.d, sp.r));
}

TEST_CASE("mismatched triangle families are rejected") {
  ESSet S = chordate(std_simplex(0)), T = chordate(std_simplex(1));
  SSet d1 = std_simplex(1);
  ProductSSet P1 = product(d1, S.loose);
  SMap fm, gm;
  for (auto& lv : P1.sset.cells)
    for (auto& id : lv) {
      fm.assignment[id] = P1.parts.at(id).first;
      gm.assignment[id] = deg_vertex_ref("1", P1.sset.dim_of(id));
    }
  CHECK_THROWS_AS(equifier_diagram(S, T, fm, gm, 2), std::runtime_error);
}

TEST_CASE("a loose end family is rejected") {
  ESSet S = chordate(std_simplex(0));
  ESSet T = interval({"1"});
  SMap f = const_vertex_map(S.loose, "1"), g = const_vertex_map(S.loose, "0");
  CHECK_THROWS_AS(inserter_diagram(S, T, f, g, 2), std::runtime_error);
}

TEST_CASE("pullback and weighted presentations agree") {
  ESSet pt = chordate(std_simplex(0));
  ESSet iv = interval({"1"});
  ESSet civ = chordate(std_simplex(1));
  std::vector<RiggedDiagram> instances;
  instances.push_back(product_diagram(iv, iv, 2));
  instances.push_back(product_diagram(pt, iv, 2));
  instances.push_back(
      inserter_diagram(pt, civ, const_vertex_map(pt.loose, "0"), const_vertex_map(pt.loose, "1"), 2));
  instances.push_back(inserter_diagram(iv, iv, id_map(iv.loose), id_map(iv.loose), 2));
  {
    SSet d1 = std_simplex(1);
    ProductSSet P1 = product(d1, pt.loose);
    SMap fm;
    for (auto& lv : P1.sset.cells)
      for (auto& id : lv) fm.assignment[id] = P1.parts.at(id).first;
    instances.push_back(equifier_diagram(pt, civ, fm, fm, 2));
  }
  for (auto& d : instances) {
    RinsAgreement a = rins_agreement(d);
    CHECK_MESSAGE(a.ok(), "n=", d.n, " ", a.witness);
  }
}

TEST_CASE("initial marking agrees with the conjugate route and the dual check") {
  ESSet pt = chordate(std_simplex(0));
  ESSet civ = chordate(std_simplex(1));
  /* terminal instance: co-dualize to get an initially marked one */
  RiggedDiagram dt =
      inserter_diagram(pt, civ, const_vertex_map(pt.loose, "0"), const_vertex_map(pt.loose, "1"), 2);
  RiggedDiagram di = co_diagram(dt);
  CHECK(!di.terminal);
  /* cell ids survive the opposite, so the conjugate's marked source leg is g */
  CHECK(diagram_leg(di, 0).at("0").base == "1");
  CHECK(diagram_leg(di, 1).at("0").base == "0");
  RiggedDiagram dtt = co_diagram(di);
  CHECK(dtt.terminal);
  CHECK(dtt.Dbar == dt.Dbar);
  RinsInitialReport rep = rins_initial(di);
  CHECK(rep.ok());
  CHECK(rep.direct.rins.loose.cell_count(0) == 1);
  /* self-dual at dimension zero */
  RinsInitialReport rep0 = rins_initial(product_diagram(pt, civ, 2));
  CHECK(rep0.ok());
  /* terminal instances run through the same double check */
  RinsInitialReport rept = rins_initial(dt);
  CHECK(rept.ok());
}

TEST_CASE("algebra tower for the identity monad on the arrow poset") {
  StrictMonad M = identity_monad(fincat_linear(1));
  EmChainReport rep = em_chain_demo(M, 2);
  CHECK(rep.ok());
  REQUIRE(rep.stages.size() == 3);
  CHECK(rep.stages[0].vertex_count == 2);
  CHECK(rep.stages[1].vertex_count == 2);
  CHECK(rep.stages[2].vertex_count == 2);
  CHECK(rep.algebra_count == 2);
  /* every stage projection is an isomorphism onto its base */
  SSet A = nerve(M.C, 2);
  CHECK(smap_iso(rep.stages[0].r.rins.loose, A, rep.stages[0].r.p.map));
  CHECK(smap_iso(rep.stages[1].r.rins.loose, rep.stages[0].r.rins.loose,
                 rep.stages[1].r.p.map));
  CHECK(smap_iso(rep.stages[2].r.rins.loose, rep.stages[1].r.rins.loose,
                 rep.stages[2].r.p.map));
}

TEST_CASE("algebra tower for the idempotent collapse monad") {
  EmChainReport rep = em_chain_demo(const_top_monad(), 2);
  CHECK(rep.ok());
  REQUIRE(rep.stages.size() == 3);
  CHECK(rep.stages[0].vertex_count == 1);
  CHECK(rep.stages[1].vertex_count == 1);
  CHECK(rep.stages[2].vertex_count == 1);
  CHECK(rep.algebra_count == 1);
}

TEST_CASE("algebra tower for the identity monad on the two-element group") {
  EmChainReport rep = em_chain_demo(identity_monad(zmod2()), 2);
  CHECK(rep.ok());
  REQUIRE(rep.stages.size() == 3);
  CHECK(rep.stages[0].vertex_count == 2);
  CHECK(rep.stages[1].vertex_count == 1);
  CHECK(rep.stages[2].vertex_count == 1);
  CHECK(rep.algebra_count == 1);
}

TEST_CASE("the tower needs room for triangles") {
  CHECK_THROWS_AS(em_chain_demo(identity_monad(fincat_linear(1)), 1), std::runtime_error);
}
