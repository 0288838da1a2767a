#pragma once
#include "rigged/sset.hpp"

namespace rigged {

/* Enhanced simplicial set: marked vertices span the tight part as a full
   subcomplex (a cell is tight iff all of its vertices are). */
struct ESSet {
  SSet loose;
  std::set<std::string> tight_vertices;

  void validate() const;
  bool tight_vertex(const std::string& v) const { return tight_vertices.count(v) != 0; }
  bool tight_cell(const std::string& id) const;
  bool tight_ref(const SimplexRef& r) const { return tight_cell(r.base); }
};

ESSet chordate(SSet S);
ESSet inchordate(SSet S);
SubSSet tight_part(const ESSet& S);

struct EMap {
  SMap map;
  bool tight = false;
};
bool emap_tight(const ESSet& S, const ESSet& T, const SMap& f);
EMap emap(const ESSet& S, const ESSet& T, SMap f);
void validate_emap(const ESSet& S, const ESSet& T, const EMap& f);
EMap ecompose(const ESSet& A, const ESSet& B, const ESSet& C, const EMap& g, const EMap& f);

/* r-class of the factorization system: injective on vertices and a bijection
   onto the target cells whose vertices lie in the vertex image. */
bool is_ffiov(const ESSet& S, const ESSet& T, const SMap& f);

struct Factorization {
  ESSet image;
  EMap l;   // surjective on vertices
  EMap r;   // ffiov inclusion
};
Factorization factorize(const ESSet& S, const ESSet& T, const EMap& f);

/* The unique diagonal filler in a (surjective-on-vertices, ffiov) square. */
std::optional<SMap> diagonal_filler(const SSet& X, const SSet& Y, const SSet& W, const SSet& Z,
                                    const SMap& l, const SMap& r,
                                    const SMap& top, const SMap& bot);

/* Mapping object: loose part is the truncated hom; a vertex is tight iff it
   carries tight vertices to tight vertices (equivalently, iff its restriction
   to the tight part factors through the target's tight part; both are
   computed and must agree). */
struct EHom {
  HomSSet hom;
  ESSet esset;
};
EHom ehom(const ESSet& S, const ESSet& T, int k);
EHom power_inchordate(const ESSet& T, const SSet& J, int k);

struct EProduct {
  ProductSSet prod;
  ESSet esset;
  EMap proj1, proj2;
};
EProduct eproduct(const ESSet& A, const ESSet& B);

struct EPullback {
  PullbackSSet pb;
  ESSet esset;
  EMap proj1, proj2;
};
EPullback epullback(const ESSet& X, const ESSet& Y, const ESSet& Z,
                    const EMap& f, const EMap& g);

ESSet eopposite(const ESSet& S);
EMap eopposite_emap(const ESSet& S, const ESSet& T, const EMap& f);

/* Seeded generators used by property tests and the acceptance suite. */
SSet random_sset(uint64_t seed, int n_vertices, int n_edges, int n_triangles);
ESSet random_esset(uint64_t seed, int n_vertices, int n_edges, int n_triangles);

}  // namespace rigged
