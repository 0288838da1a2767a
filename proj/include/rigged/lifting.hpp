#pragma once
#include "rigged/catkit.hpp"

namespace rigged {

/* Functor between finite categories packaged with its truncated nerves; the
   nerve map is required to be an isofibration at the category level. */
struct NerveFib {
  FinCat Ecat, Bcat;
  CFunctor P;
  int k = 3;
  SSet E, B;  /* nerves truncated at k */
  SMap p;
};
NerveFib nerve_fib(const FinCat& E, const FinCat& B, const CFunctor& P, int k = 3);

/* One boundary-filling instance anchored at a candidate vertex. */
struct LiftProblem {
  SMap g;              /* boundary of the n-simplex -> E */
  SMap d;              /* n-simplex -> B, with p.g = d restricted */
  int n = 1;
  std::string anchor;  /* g at the end vertex [[n]] */
};

/* All instances anchored at x at dimension n, and the filler search for one
   of them (returns the lexicographically least lift when present). */
std::vector<LiftProblem> universal_instances(const SSet& E, const SSet& B, const SMap& p,
                                             const std::string& x, int n);
std::optional<SMap> solve_universal_instance(const SSet& E, const SSet& B, const SMap& p,
                                             const LiftProblem& pr);

/* A vertex is universal when every anchored boundary instance has a filler.
   Checked exhaustively for 1 <= n <= n_max, and against the edge criterion
   (every vertex e and edge p(e) -> p(x) admit exactly one edge lift e -> x);
   the two must agree on complexes that are nerves, and disagreement throws. */
bool universal_by_lifting(const SSet& E, const SSet& B, const SMap& p, const std::string& x,
                          int n_max);
bool universal_by_edges(const SSet& E, const SSet& B, const SMap& p, const std::string& x);
bool is_universal_element(const SSet& E, const SSet& B, const SMap& p, const std::string& x,
                          int n_max = 3);

/* Vertex-level detection of a left adjoint right inverse: every base vertex
   needs a universal preimage.  Cross-checked against the direct adjoint
   search on the underlying categories. */
struct UniversalLaliReport {
  bool lali = false;
  bool oracle = false;
  bool agrees = false;
  std::vector<std::string> universal_vertices;            /* all universal vertices of E */
  std::map<std::string, std::string> universal_preimage;  /* base vertex -> witness */
  std::string witness;                                    /* first base vertex lacking one */

  bool ok() const { return agrees; }
};
UniversalLaliReport lali_via_universal(const NerveFib& f, int n_max = 3);

/* Commuting square of nerve isofibrations: top e: E1 -> E2 over bottom
   b: B1 -> B2. */
struct NerveFibSquare {
  NerveFib f1, f2;
  CFunctor top, bottom;
  SMap e, b;
};
NerveFibSquare nerve_fib_square(const NerveFib& f1, const NerveFib& f2, const CFunctor& top,
                                const CFunctor& bottom);

/* The square is a morphism of lalis exactly when the top preserves universal
   elements; cross-checked against the mate of the two adjunctions. */
struct UniversalLaliSquareReport {
  UniversalLaliReport left, right;
  bool preserves = false;  /* top sends universal elements to universal elements */
  bool oracle = false;     /* mate of the two adjunctions is an isomorphism */
  bool agrees = false;
  std::string witness;     /* universal vertex whose image fails, if any */

  bool ok() const { return left.ok() && right.ok() && agrees; }
};
UniversalLaliSquareReport lali_morphism_via_universal(const NerveFibSquare& sq, int n_max = 3);

/* Nondegenerate cells of Delta^n x Delta^m outside the boundary subcomplex,
   listed by dimension (the attachment order).  Every complement cell must
   contain the terminal vertex (n, m); violation is a hard failure. */
struct PrismCells {
  int n = 0, m = 0;
  ProductSSet prod;                              /* Delta^n x Delta^m */
  std::vector<std::string> boundary_cells;       /* cells of the boundary subcomplex */
  std::vector<std::vector<std::string>> layers;  /* complement cells by dimension */

  size_t complement_count() const;
};
PrismCells prism_complement_cells(int n, int m);
/* Rebuild the product from the boundary by attaching each complement cell
   along its boundary; true when the chain of pushouts matches the product. */
bool prism_reconstruct(const PrismCells& pc);

/* Both levels of the pullback of a boundary family transpose along the
   simplex-to-boundary restriction between plain powers, with the induced
   vertical map.  fa and fb are the two vertical nerve isofibrations. */
struct RinsSquare {
  int m = 1;
  int k = 2;
  NerveFib fa, fb;
  HomSSet powb1, powb2;       /* powers of fb.E, fb.B by the boundary */
  HomSSet pows1, pows2;       /* powers by the simplex */
  SMap restrict1, restrict2;  /* simplex power -> boundary power */
  SMap D1, D2;                /* family transposes fa.E -> powb1, fa.B -> powb2 */
  PullbackSSet r1, r2;
  SMap p1, p2;                /* projections to fa.E, fa.B */
  SMap phi1, phi2;            /* cones into the simplex powers */
  SMap vert;                  /* induced map r1 -> r2 */
};
RinsSquare rins_square(const NerveFib& fa, const NerveFib& fb, const SMap& D1, const SMap& D2,
                       int m);
/* The m = 1 square assembled from two leg squares f, g (legs at the boundary
   vertices 0 and 1). */
RinsSquare rins_square_edges(const NerveFib& fa, const NerveFib& fb, const SMap& f1,
                             const SMap& f2, const SMap& g1, const SMap& g2);

/* Boundary instance into the level-one inserter together with its base data:
   g into r1, a1 into fa.E under the projection, d into r2 under the vertical
   map. */
struct RinsLiftProblem {
  SMap g;   /* boundary of the n-simplex -> r1 */
  SMap a1;  /* n-simplex -> fa.E with p1.g = a1 restricted */
  SMap d;   /* n-simplex -> r2 with vert.g = d restricted and fa.p.a1 = p2.d */
  int n = 0;
};
struct RinsLiftResult {
  bool found = false;
  SMap l;               /* n-simplex -> r1 */
  std::string witness;  /* first non-fillable prism cell when absent */
};
/* Extend the boundary data over the prism cell by cell and assemble the lift
   through the pullback; the result satisfies g = l restricted, p1.l = a1 and
   vert.l = d exactly (verified, hard failure otherwise). */
RinsLiftResult solve_rins_lift(const RinsSquare& sq, const RinsLiftProblem& pr);

/* Certify a universal element of the vertical map over every base vertex via
   the solver, compare with the exhaustive universality search, and check the
   projection both preserves and detects universal elements, against the
   adjoint-search and mate oracles on homotopy categories. */
struct RinsLaliReport {
  bool lali = false;          /* every r2 vertex has a universal preimage */
  bool oracle = false;        /* adjoint search on homotopy categories */
  bool solver_ok = false;     /* solver lift found over every base vertex */
  bool solver_match = false;  /* every solver-found vertex is exhaustively universal */
  bool p_preserves = false;   /* universal in r1 -> projection universal in fa */
  bool p_detects = false;     /* projection universal -> universal in r1 */
  bool p_oracle = false;      /* mate of the two adjunctions is an isomorphism */
  bool p_agrees = false;      /* p_preserves matches p_oracle */
  std::string witness;

  bool ok() const {
    return lali == oracle && solver_ok && solver_match && p_detects && p_agrees;
  }
};
RinsLaliReport rins_lali_instance_check(const RinsSquare& sq, int n_max = 2);

}  // namespace rigged
