/* Tests for universal elements of nerve isofibrations: the boundary-filling
   and edge criteria, vertex-level lali detection against the categorical
   adjoint search, the prism complement decomposition with reconstruction,
   and the cell-by-cell lift solver over pullback inserter squares. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "rigged/enriched.hpp"
#include "rigged/lifting.hpp"

using namespace rigged;

static FinCat point_cat() { return fincat_linear(0); }

static CFunctor const_functor(const FinCat& C, const FinCat& D, const std::string& obj) {
  CFunctor F;
  for (const auto& o : C.objects) F.ob[o] = obj;
  for (const auto& m : C.morphisms) F.mor[m] = D.id_of(obj);
  return F;
}

static CFunctor to_point(const FinCat& C) { return const_functor(C, point_cat(), "0"); }

/* Two parallel arrows a -> b. */
static FinCat parallel_pair() {
  FinCat C;
  C.add_object("a");
  C.add_object("b");
  C.add_morphism("1a", "a", "a");
  C.add_morphism("1b", "b", "b");
  C.add_morphism("u", "a", "b");
  C.add_morphism("v", "a", "b");
  C.identity["a"] = "1a";
  C.identity["b"] = "1b";
  for (const auto& m : C.morphisms) {
    C.comp[{m, C.id_of(C.dom_of(m))}] = m;
    C.comp[{C.id_of(C.cod_of(m)), m}] = m;
  }
  C.sort_all();
  C.validate();
  return C;
}

/* The chain poset over the point, the stock lali example. */
static NerveFib chain_over_point(int n, int k) {
  FinCat C = fincat_linear(n);
  return nerve_fib(C, point_cat(), to_point(C), k);
}

TEST_CASE("universal vertices over the point are exactly the top of the chain") {
  NerveFib f = chain_over_point(1, 3);
  UniversalLaliReport rep = lali_via_universal(f);
  CHECK(rep.universal_vertices == std::vector<std::string>{"1"});
  CHECK(rep.lali);
  CHECK(rep.oracle);
  CHECK(rep.agrees);
  CHECK(rep.universal_preimage.at("0") == "1");
  CHECK(rep.witness.empty());
}

TEST_CASE("identity projection makes every vertex universal") {
  FinCat C = fincat_linear(2);
  NerveFib f = nerve_fib(C, C, cf_identity(C), 3);
  UniversalLaliReport rep = lali_via_universal(f);
  CHECK(rep.universal_vertices.size() == 3);
  CHECK(rep.lali);
  CHECK(rep.agrees);
}

TEST_CASE("object-bijective non-full projection loses the upper universal vertex") {
  FinCat E = fincat_discrete({"0", "1"});
  FinCat B = fincat_linear(1);
  CFunctor P;
  P.ob = {{"0", "0"}, {"1", "1"}};
  P.mor = {{E.id_of("0"), "0<=0"}, {E.id_of("1"), "1<=1"}};
  NerveFib f = nerve_fib(E, B, P, 3);
  UniversalLaliReport rep = lali_via_universal(f);
  CHECK(rep.universal_vertices == std::vector<std::string>{"0"});
  CHECK_FALSE(rep.lali);
  CHECK_FALSE(rep.oracle);
  CHECK(rep.agrees);
  CHECK(rep.witness == "1");
}

TEST_CASE("anchored boundary instances are solvable exactly at universal anchors") {
  NerveFib f = chain_over_point(1, 3);
  auto at_top = universal_instances(f.E, f.B, f.p, "1", 1);
  CHECK(at_top.size() == 2);
  for (const auto& pr : at_top) CHECK(solve_universal_instance(f.E, f.B, f.p, pr).has_value());
  auto at_bottom = universal_instances(f.E, f.B, f.p, "0", 1);
  CHECK(at_bottom.size() == 2);
  bool all = true;
  for (const auto& pr : at_bottom)
    if (!solve_universal_instance(f.E, f.B, f.p, pr)) all = false;
  CHECK_FALSE(all);
  CHECK(universal_by_edges(f.E, f.B, f.p, "1"));
  CHECK_FALSE(universal_by_edges(f.E, f.B, f.p, "0"));
}

TEST_CASE("isomorphic vertices share universality and are uniquely linked in a fiber") {
  FinCat C = fincat_walking_iso();
  NerveFib f = nerve_fib(C, point_cat(), to_point(C), 2);
  UniversalLaliReport rep = lali_via_universal(f, 2);
  CHECK(rep.universal_vertices == std::vector<std::string>{"x", "y"});
  CHECK(rep.lali);
  CHECK(rep.agrees);
  /* within the single fiber, the two universal vertices are linked by exactly
     one morphism each way, and it is invertible */
  CHECK(C.hom("x", "y") == std::vector<std::string>{"f"});
  CHECK(C.is_iso("f"));
}

TEST_CASE("prism complement sizes and layers are fixed") {
  PrismCells p00 = prism_complement_cells(0, 0);
  CHECK(p00.complement_count() == 1);
  CHECK(p00.boundary_cells.empty());
  PrismCells p01 = prism_complement_cells(0, 1);
  CHECK(p01.complement_count() == 1);
  CHECK(p01.layers[1].size() == 1);
  PrismCells p11 = prism_complement_cells(1, 1);
  CHECK(p11.complement_count() == 3);
  CHECK(p11.layers[1].size() == 1);
  CHECK(p11.layers[2].size() == 2);
  CHECK(p11.boundary_cells.size() == 8);
  PrismCells p21 = prism_complement_cells(2, 1);
  CHECK(p21.complement_count() == 5);
  CHECK(p21.layers[2].size() == 2);
  CHECK(p21.layers[3].size() == 3);
  CHECK(prism_complement_cells(2, 2).complement_count() == 13);
  CHECK(prism_complement_cells(3, 3).complement_count() == 63);
  /* the terminal-vertex theorem is a hard check inside the enumeration */
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) CHECK_NOTHROW(prism_complement_cells(n, m));
}

TEST_CASE("attaching complement cells in order rebuilds the product") {
  CHECK(prism_reconstruct(prism_complement_cells(0, 0)));
  CHECK(prism_reconstruct(prism_complement_cells(0, 1)));
  CHECK(prism_reconstruct(prism_complement_cells(1, 1)));
  CHECK(prism_reconstruct(prism_complement_cells(1, 2)));
  CHECK(prism_reconstruct(prism_complement_cells(2, 2)));
  CHECK(prism_reconstruct(prism_complement_cells(3, 1)));
}

/* Identity legs between the chain-over-point fibration and itself. */
static RinsSquare identity_leg_square(int k) {
  NerveFib fa = chain_over_point(1, k);
  NerveFib fb = chain_over_point(1, k);
  SMap idE = id_map(fa.E);
  SMap idB = id_map(fa.B);
  return rins_square_edges(fa, fb, idE, idB, idE, idB);
}

TEST_CASE("edge families transpose onto the vertex evaluations") {
  RinsSquare sq = identity_leg_square(2);
  SSet bnd = boundary(1).sset;
  SMap ev0 = ev_vertex(sq.powb1, bnd, sq.fb.E, "0");
  SMap ev1 = ev_vertex(sq.powb1, bnd, sq.fb.E, "1");
  CHECK(compose(sq.powb1.hom, sq.fb.E, ev0, sq.D1) == id_map(sq.fa.E));
  CHECK(compose(sq.powb1.hom, sq.fb.E, ev1, sq.D1) == id_map(sq.fa.E));
}

TEST_CASE("rigged square over the point is a certified lali with detecting projection") {
  RinsSquare sq = identity_leg_square(2);
  CHECK(sq.r1.sset.cell_count(0) == 2);
  CHECK(sq.r2.sset.cell_count(0) == 1);
  RinsLaliReport rep = rins_lali_instance_check(sq, 2);
  CHECK_MESSAGE(rep.ok(), rep.witness);
  CHECK(rep.lali);
  CHECK(rep.oracle);
  CHECK(rep.solver_ok);
  CHECK(rep.solver_match);
  CHECK(rep.p_preserves);
  CHECK(rep.p_detects);
  CHECK(rep.p_oracle);
  CHECK(rep.p_agrees);
}

/* The vertex of the level-one inserter sitting over base vertex `b` whose
   filler edge is the cell `edge` of the target nerve. */
static std::string inserter_vertex(const RinsSquare& sq, const std::string& b,
                                   const std::string& edge) {
  SSet sx = std_simplex(1);
  for (const auto& id : sq.r1.sset.cells[0]) {
    const auto& parts = sq.r1.parts.at(id);
    if (parts.first.base != b) continue;
    SMap vm = sq.pows1.vertex_map(sx, sq.fb.E, parts.second.base);
    if (vm.at("0.1").base == edge) return id;
  }
  REQUIRE(false);
  return "";
}

TEST_CASE("identity legs admit the degenerate lift") {
  RinsSquare sq = identity_leg_square(2);
  std::string v1 = inserter_vertex(sq, "1", "1");  /* filler is the degenerate edge at 1 */
  std::string y = sq.r2.sset.cells[0][0];
  RinsLiftProblem lp;
  lp.n = 1;
  lp.g.assignment["0"] = SimplexRef{{}, v1};
  lp.g.assignment["1"] = SimplexRef{{}, v1};
  lp.a1.assignment["0"] = SimplexRef{{}, "1"};
  lp.a1.assignment["1"] = SimplexRef{{}, "1"};
  lp.a1.assignment["0.1"] = SimplexRef{{0}, "1"};
  lp.d.assignment["0"] = SimplexRef{{}, y};
  lp.d.assignment["1"] = SimplexRef{{}, y};
  lp.d.assignment["0.1"] = SimplexRef{{0}, y};
  RinsLiftResult lr = solve_rins_lift(sq, lp);
  CHECK(lr.found);
  CHECK(lr.l.at("0.1").base == v1);
  CHECK(lr.l.at("0.1").deg == std::vector<int>{0});
}

TEST_CASE("the diagonal instance finds the nondegenerate edge lift") {
  RinsSquare sq = identity_leg_square(2);
  std::string v0 = inserter_vertex(sq, "0", "0");
  std::string v1 = inserter_vertex(sq, "1", "1");
  std::string y = sq.r2.sset.cells[0][0];
  RinsLiftProblem lp;
  lp.n = 1;
  lp.g.assignment["0"] = SimplexRef{{}, v0};
  lp.g.assignment["1"] = SimplexRef{{}, v1};
  lp.a1.assignment["0"] = SimplexRef{{}, "0"};
  lp.a1.assignment["1"] = SimplexRef{{}, "1"};
  lp.a1.assignment["0.1"] = SimplexRef{{}, "0<=1"};
  lp.d.assignment["0"] = SimplexRef{{}, y};
  lp.d.assignment["1"] = SimplexRef{{}, y};
  lp.d.assignment["0.1"] = SimplexRef{{0}, y};
  RinsLiftResult lr = solve_rins_lift(sq, lp);
  CHECK(lr.found);
  CHECK(lr.l.at("0.1").deg.empty());
  CHECK(lr.l.at("0") == SimplexRef{{}, v0});
  CHECK(lr.l.at("1") == SimplexRef{{}, v1});
}

TEST_CASE("identity base fibration gives an isomorphic vertical map") {
  FinCat C = fincat_linear(1);
  NerveFib fa = nerve_fib(C, C, cf_identity(C), 2);
  NerveFib fb = chain_over_point(1, 2);
  SMap idE = id_map(fa.E);
  SMap cst = nerve_map(C, point_cat(), to_point(C), 2);
  RinsSquare sq = rins_square_edges(fa, fb, idE, cst, idE, cst);
  CHECK(smap_iso(sq.r1.sset, sq.r2.sset, sq.vert));
  RinsLaliReport rep = rins_lali_instance_check(sq, 2);
  CHECK_MESSAGE(rep.ok(), rep.witness);
  CHECK(rep.lali);
}

TEST_CASE("non-universal leg anchor leaves a triangle with no filler") {
  FinCat P = parallel_pair();
  NerveFib fa = chain_over_point(1, 2);
  NerveFib fb = nerve_fib(P, point_cat(), to_point(P), 2);
  FinCat C = fincat_linear(1);
  CFunctor Fu;
  Fu.ob = {{"0", "a"}, {"1", "b"}};
  Fu.mor = {{"0<=0", "1a"}, {"1<=1", "1b"}, {"0<=1", "u"}};
  SMap f1 = nerve_map(C, P, const_functor(C, P, "a"), 2);
  SMap g1 = nerve_map(C, P, Fu, 2);
  SMap idpt = id_map(fa.B);
  RinsSquare sq = rins_square_edges(fa, fb, f1, idpt, g1, idpt);
  CHECK(sq.r1.sset.cell_count(0) == 3);
  std::string wu = inserter_vertex(sq, "1", "u");
  std::string wv = inserter_vertex(sq, "1", "v");
  std::string y = sq.r2.sset.cells[0][0];
  RinsLiftProblem lp;
  lp.n = 1;
  lp.g.assignment["0"] = SimplexRef{{}, wv};
  lp.g.assignment["1"] = SimplexRef{{}, wu};
  lp.a1.assignment["0"] = SimplexRef{{}, "1"};
  lp.a1.assignment["1"] = SimplexRef{{}, "1"};
  lp.a1.assignment["0.1"] = SimplexRef{{0}, "1"};
  lp.d.assignment["0"] = SimplexRef{{}, y};
  lp.d.assignment["1"] = SimplexRef{{}, y};
  lp.d.assignment["0.1"] = SimplexRef{{0}, y};
  RinsLiftResult lr = solve_rins_lift(sq, lp);
  CHECK_FALSE(lr.found);
  PrismCells pc = prism_complement_cells(1, 1);
  CHECK(std::find(pc.layers[2].begin(), pc.layers[2].end(), lr.witness) != pc.layers[2].end());
}

TEST_CASE("identity squares compare as morphisms on both criteria") {
  NerveFib f = chain_over_point(1, 3);
  NerveFibSquare sq = nerve_fib_square(f, f, cf_identity(f.Ecat), cf_identity(f.Bcat));
  UniversalLaliSquareReport rep = lali_morphism_via_universal(sq);
  CHECK(rep.ok());
  CHECK(rep.preserves);
  CHECK(rep.oracle);
  CHECK(rep.witness.empty());
}

TEST_CASE("a top losing the universal vertex fails both criteria with the same witness") {
  NerveFib f = chain_over_point(1, 3);
  CFunctor drop = const_functor(f.Ecat, f.Ecat, "0");
  NerveFibSquare sq = nerve_fib_square(f, f, drop, cf_identity(f.Bcat));
  UniversalLaliSquareReport rep = lali_morphism_via_universal(sq);
  CHECK(rep.left.lali);
  CHECK(rep.right.lali);
  CHECK_FALSE(rep.preserves);
  CHECK_FALSE(rep.oracle);
  CHECK(rep.agrees);
  CHECK(rep.witness == "1");
}

TEST_CASE("probe squares reflect the projection biconditional") {
  RinsSquare sq = identity_leg_square(2);
  HtpyCat h1 = homotopy_cat(sq.r1.sset);
  HtpyCat h2 = homotopy_cat(sq.r2.sset);
  HtpyCat ha1 = homotopy_cat(sq.fa.E);
  HtpyCat ha2 = homotopy_cat(sq.fa.B);
  CFunctor F = hfunctor(sq.r1.sset, sq.r2.sset, sq.vert, h1, h2);
  CFunctor PA = hfunctor(sq.fa.E, sq.fa.B, sq.fa.p, ha1, ha2);
  CFunctor hp1 = hfunctor(sq.r1.sset, sq.fa.E, sq.p1, h1, ha1);
  NerveFib rfib = nerve_fib(h1.cat, h2.cat, F, 2);
  NerveFib afib = nerve_fib(ha1.cat, ha2.cat, PA, 2);
  NerveFib ptfib = nerve_fib(point_cat(), point_cat(), cf_identity(point_cat()), 2);
  for (const auto& x : h1.cat.objects) {
    CFunctor top, bot, topa, bota;
    top.ob["0"] = x;
    top.mor["0<=0"] = h1.cat.id_of(x);
    bot.ob["0"] = F.ob.at(x);
    bot.mor["0<=0"] = h2.cat.id_of(F.ob.at(x));
    topa.ob["0"] = hp1.ob.at(x);
    topa.mor["0<=0"] = ha1.cat.id_of(hp1.ob.at(x));
    bota.ob["0"] = PA.ob.at(hp1.ob.at(x));
    bota.mor["0<=0"] = ha2.cat.id_of(bota.ob.at("0"));
    auto into_rins = lali_morphism_via_universal(nerve_fib_square(ptfib, rfib, top, bot), 2);
    auto into_base = lali_morphism_via_universal(nerve_fib_square(ptfib, afib, topa, bota), 2);
    CHECK(into_rins.ok());
    CHECK(into_base.ok());
    CHECK(into_rins.preserves == into_base.preserves);
    CHECK(into_rins.oracle == into_base.oracle);
  }
}

TEST_CASE("truncation guards reject out-of-range problems") {
  FinCat C = fincat_linear(1);
  CHECK_THROWS(nerve_fib(C, point_cat(), to_point(C), 0));
  NerveFib f = chain_over_point(1, 3);
  CHECK_THROWS(lali_via_universal(f, 4));
  RinsSquare sq = identity_leg_square(2);
  RinsLiftProblem lp;
  lp.n = 2;  /* prism dimension 3 exceeds the truncation level 2 */
  CHECK_THROWS(solve_rins_lift(sq, lp));
}
