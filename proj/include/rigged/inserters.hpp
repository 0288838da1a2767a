#pragma once
#include "rigged/enriched.hpp"

namespace rigged {

/* Power of T by the n-simplex or by its boundary, marked as a rigged limit:
   a map is tight exactly when its value at the end vertex is (terminal:
   vertex n, initial: vertex 0).  The boundary power at n = 0 is the tight
   point. */
EHom rigged_power_simplex(const ESSet& T, int n, int k, bool terminal);
EHom rigged_power_boundary(const ESSet& T, int n, int k, bool terminal);

/* Two-object diagram shaped like a simplex boundary: objects S and T plus a
   boundary-indexed family of maps S -> T, stored uncurried on bnd x S.  The
   leg at the marked end vertex must be tight (no condition at n = 0, where
   the boundary is empty). */
struct RiggedDiagram {
  ESSet S, T;
  int n = 0;
  int k = 2;
  bool terminal = true;
  SSet bnd;         /* boundary of the n-simplex, standard chain ids */
  ProductSSet dom;  /* bnd x S */
  SMap Dbar;        /* dom -> T */
  EHom pow;         /* rigged_power_boundary(T, n, k, terminal) */
  EMap D;           /* the transpose S -> pow */

  int mark() const { return terminal ? n : 0; }
  void validate() const;
};
RiggedDiagram rigged_diagram(const ESSet& S, const ESSet& T, int n, int k, const SMap& Dbar,
                             bool terminal = true);
/* The family at one boundary vertex, as a plain map S -> T. */
SMap diagram_leg(const RiggedDiagram& d, int vertex);

/* The rigged inserter computed as a pullback of the transpose along the
   boundary-restriction map between the rigged powers. */
struct RinsResult {
  ESSet rins;         /* truncated at d.k */
  EMap p;             /* projection to S */
  EMap cone;          /* universal filler family, into the simplex power */
  EHom pow_sx;        /* rigged_power_simplex(T, n, k, terminal) */
  SMap restrict_bnd;  /* simplex power -> boundary power */
};
RinsResult rins_pullback(const RiggedDiagram& d);
/* Evaluation of the cone at a simplex vertex, as a map out of the inserter. */
EMap rins_ev(const RiggedDiagram& d, const RinsResult& r, int vertex);
/* Vertex-level tightness detection: for n >= 1 the projection alone, at
   n = 0 jointly with the evaluation of the cone. */
bool rins_reflects(const RiggedDiagram& d, const RinsResult& r);

/* The same limit as a weighted family object over the two-object shape with
   the boundary hom. */
ECat rigged_shape(int n, int k, bool terminal);
EWeight rigged_weight(int n, int k, bool terminal);
/* Diagram x |-> S, y |-> T acting through the uncurried family. */
EWeight diagram_weight(const RiggedDiagram& d);

struct RinsWeighted {
  ECat shape;
  EWeight weight;
  EWeight diagram;
  WeightedLimit lim;
  EMap p;      /* projection at the point weight vertex */
  SMap cone;   /* family cells assembled into the simplex power */
};
RinsWeighted rins_weighted(const RiggedDiagram& d, size_t budget = 5000000);

/* Cell-by-cell match of the two presentations through the canonical map
   family |-> (projection value, filler cell). */
struct RinsAgreement {
  bool iso = false;
  bool tights_match = false;
  bool proj_match = false;
  bool cone_match = false;
  std::string witness;

  bool ok() const { return iso && tights_match && proj_match && cone_match; }
};
RinsAgreement rins_agreement(const RiggedDiagram& d, size_t budget = 5000000);

/* Conjugate diagram on the opposite complexes: vertex order of the boundary
   reversed, so the marked end flips between terminal and initial. */
RiggedDiagram co_diagram(const RiggedDiagram& d);

/* The initially rigged inserter, computed directly with the initial marks
   and as the opposite of the terminally rigged inserter of the conjugate
   diagram; `op_match` records the cell-level comparison of the two routes
   and `duality` the weighted-presentation double check. */
struct RinsInitialReport {
  RinsResult direct;
  ESSet dual;
  bool op_match = false;
  bool tights_match = false;
  bool proj_match = false;
  DualityReport duality;

  bool ok() const { return op_match && tights_match && proj_match && duality.iso; }
};
RinsInitialReport rins_initial(const RiggedDiagram& d, size_t budget = 5000000);

/* Named diagram shapes. */
RiggedDiagram product_diagram(const ESSet& S, const ESSet& T, int k);
RiggedDiagram inserter_diagram(const ESSet& S, const ESSet& T, const SMap& f, const SMap& g,
                               int k);
struct CommaData {
  EProduct ab;  /* S = A x B */
  RiggedDiagram d;
};
CommaData comma_diagram(const ESSet& A, const ESSet& B, const ESSet& T, const SMap& f,
                        const SMap& g, int k);
/* fm, gm : Delta^1 x S -> T on the product complex, with equal ends; the
   third boundary face is the degenerate family at the common target. */
RiggedDiagram equifier_diagram(const ESSet& S, const ESSet& T, const SMap& fm, const SMap& gm,
                               int k);

/* Projections of the named limits: product/comma expose the two object
   projections, inserter/equifier the base projection and the cone. */
struct SpecializedRins {
  RiggedDiagram d;
  RinsResult r;
  EMap p1, p2;
};
SpecializedRins specialize_product(const ESSet& S, const ESSet& T, int k);
SpecializedRins specialize_inserter(const ESSet& S, const ESSet& T, const SMap& f, const SMap& g,
                                    int k);
SpecializedRins specialize_comma(const ESSet& A, const ESSet& B, const ESSet& T, const SMap& f,
                                 const SMap& g, int k);
SpecializedRins specialize_equifier(const ESSet& S, const ESSet& T, const SMap& fm,
                                    const SMap& gm, int k);

/* Algebra-object tower over the nerve of a strict monad's base category: an
   inserter stage carrying (a, Ta -> a), an equifier stage imposing
   associativity, and one imposing unitality; the final vertex set is matched
   against the strict algebra category. */
struct EmChainStage {
  std::string name;
  RiggedDiagram d;
  RinsResult r;
  size_t vertex_count = 0;
  bool p_tight = false;
  bool p_reflects = false;
};
struct EmChainReport {
  std::vector<EmChainStage> stages;
  size_t algebra_count = 0;
  bool stage_counts_ok = false;    /* inserter stage = pairs (a, Ta -> a) */
  bool final_matches_oracle = false;
  std::string witness;

  bool ok() const;
};
EmChainReport em_chain_demo(const StrictMonad& M, int k);

}  // namespace rigged
