#pragma once

#include <map>
#include <string>
#include <vector>

#include "latdsp/bitrows.hpp"
#include "latdsp/lattice.hpp"
#include "latdsp/signal.hpp"

namespace latdsp {

// Binary object/attribute relation. Rows are kept in both orientations so
// derivations in either direction are word-wide ANDs.
class Context {
 public:
  Context(std::vector<std::string> objects, std::vector<std::string> attributes);

  int object_count() const { return int(objects_.size()); }
  int attribute_count() const { return int(attributes_.size()); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }

  void relate(int obj, int attr);
  bool incident(int obj, int attr) const;

  // Attributes shared by all given objects; the empty set derives everything.
  BitVec derive_attr(const BitVec& objs) const;
  BitVec derive_obj(const BitVec& attrs) const;
  std::vector<int> derive_attr(const std::vector<int>& objs) const;
  std::vector<int> derive_obj(const std::vector<int>& attrs) const;

  // Transpose: objects become attributes and vice versa.
  Context transposed() const;

  // Merge objects with identical attribute rows, keeping the first name.
  Context clarified() const;

  bool operator==(const Context& o) const;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  BitRows obj_rows_;   // object -> attribute sets (padded square)
  BitRows attr_rows_;  // attribute -> object sets
};

// Fixed point of the two derivations.
struct Concept {
  BitVec extent;
  BitVec intent;
};

// All concepts, ascending lexicographically by intent bit-vector with the
// first attribute most significant.
std::vector<Concept> enumerate_concepts(const Context& ctx);

// Concepts under intent inclusion (more attributes = higher), with the
// element records aligned to the lattice's topological indices. Element
// names are c0..cN in enumeration order.
struct ConceptLattice {
  Lattice lattice;
  std::vector<Concept> concepts;
  std::vector<std::string> objects;
  std::vector<std::string> attributes;
};

ConceptLattice build_concept_lattice(const Context& ctx);

// Mean label over each concept's extent. A concept with an empty extent gets
// value 0 and raises the flag.
struct LabeledSignal {
  RealSignal signal;
  bool empty_extent = false;
};

LabeledSignal attach_signal(const ConceptLattice& cl, const std::vector<double>& labels);
LabeledSignal attach_signal(const ConceptLattice& cl,
                            const std::map<std::string, double>& labels);

// Union of extent x intent rectangles; inverts build_concept_lattice exactly.
Context reconstruct_context(const ConceptLattice& cl);

}  // namespace latdsp
