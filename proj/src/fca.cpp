#include "latdsp/fca.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "latdsp/errors.hpp"

namespace latdsp {

namespace {

void and_into(BitVec& acc, const std::uint64_t* row, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) acc.words()[w] &= row[w];
}

void fill_all(BitVec& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) v.set(i);
}

bool is_subset(const BitVec& a, const BitVec& b) {
  for (std::size_t w = 0; w < a.word_count(); ++w)
    if (a.words()[w] & ~b.words()[w]) return false;
  return true;
}

// First attribute is the most significant position.
bool intent_lex_less(const BitVec& a, const BitVec& b) {
  for (std::size_t w = 0; w < a.word_count(); ++w) {
    const std::uint64_t diff = a.words()[w] ^ b.words()[w];
    if (diff) {
      const std::size_t bit = (w << 6) + std::size_t(std::countr_zero(diff));
      return !a.get(bit);
    }
  }
  return false;
}

}  // namespace

Context::Context(std::vector<std::string> objects, std::vector<std::string> attributes)
    : objects_(std::move(objects)),
      attributes_(std::move(attributes)),
      obj_rows_(objects_.size(), attributes_.size()),
      attr_rows_(attributes_.size(), objects_.size()) {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    for (std::size_t j = i + 1; j < objects_.size(); ++j)
      if (objects_[i] == objects_[j]) fail(Errc::DuplicateElement, "duplicate object id");
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    for (std::size_t j = i + 1; j < attributes_.size(); ++j)
      if (attributes_[i] == attributes_[j])
        fail(Errc::DuplicateElement, "duplicate attribute id");
}

void Context::relate(int obj, int attr) {
  if (obj < 0 || obj >= object_count() || attr < 0 || attr >= attribute_count())
    fail(Errc::OutOfBounds, "incidence index out of range");
  obj_rows_.set(std::size_t(obj), std::size_t(attr));
  attr_rows_.set(std::size_t(attr), std::size_t(obj));
}

bool Context::incident(int obj, int attr) const {
  if (obj < 0 || obj >= object_count() || attr < 0 || attr >= attribute_count())
    fail(Errc::OutOfBounds, "incidence index out of range");
  return obj_rows_.get(std::size_t(obj), std::size_t(attr));
}

BitVec Context::derive_attr(const BitVec& objs) const {
  BitVec acc(static_cast<std::size_t>(attribute_count()));
  fill_all(acc);
  objs.for_each([&](std::size_t o) {
    and_into(acc, obj_rows_.row(o), obj_rows_.words_per_row());
  });
  return acc;
}

BitVec Context::derive_obj(const BitVec& attrs) const {
  BitVec acc(static_cast<std::size_t>(object_count()));
  fill_all(acc);
  attrs.for_each([&](std::size_t a) {
    and_into(acc, attr_rows_.row(a), attr_rows_.words_per_row());
  });
  return acc;
}

std::vector<int> Context::derive_attr(const std::vector<int>& objs) const {
  BitVec sel(static_cast<std::size_t>(object_count()));
  for (int o : objs) {
    if (o < 0 || o >= object_count()) fail(Errc::OutOfBounds, "object index out of range");
    sel.set(std::size_t(o));
  }
  std::vector<int> out;
  derive_attr(sel).for_each([&](std::size_t a) { out.push_back(int(a)); });
  return out;
}

std::vector<int> Context::derive_obj(const std::vector<int>& attrs) const {
  BitVec sel(static_cast<std::size_t>(attribute_count()));
  for (int a : attrs) {
    if (a < 0 || a >= attribute_count())
      fail(Errc::OutOfBounds, "attribute index out of range");
    sel.set(std::size_t(a));
  }
  std::vector<int> out;
  derive_obj(sel).for_each([&](std::size_t o) { out.push_back(int(o)); });
  return out;
}

Context Context::transposed() const {
  Context t(attributes_, objects_);
  for (int o = 0; o < object_count(); ++o)
    for (int a = 0; a < attribute_count(); ++a)
      if (obj_rows_.get(std::size_t(o), std::size_t(a))) t.relate(a, o);
  return t;
}

Context Context::clarified() const {
  std::vector<int> keep;
  for (int o = 0; o < object_count(); ++o) {
    bool dup = false;
    for (int p : keep)
      if (obj_rows_.rows_equal(std::size_t(p), std::size_t(o))) {
        dup = true;
        break;
      }
    if (!dup) keep.push_back(o);
  }
  std::vector<std::string> names;
  names.reserve(keep.size());
  for (int o : keep) names.push_back(objects_[std::size_t(o)]);
  Context c(std::move(names), attributes_);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (int a = 0; a < attribute_count(); ++a)
      if (obj_rows_.get(std::size_t(keep[i]), std::size_t(a))) c.relate(int(i), a);
  return c;
}

bool Context::operator==(const Context& o) const {
  if (objects_ != o.objects_ || attributes_ != o.attributes_) return false;
  for (int i = 0; i < object_count(); ++i)
    for (int j = 0; j < attribute_count(); ++j)
      if (obj_rows_.get(std::size_t(i), std::size_t(j)) !=
          o.obj_rows_.get(std::size_t(i), std::size_t(j)))
        return false;
  return true;
}

namespace {

// Close-by-One: extend the intent attribute by attribute; the canonicity test
// (no new attribute below the pivot) visits every concept exactly once.
void cbo(const Context& ctx, std::vector<Concept>& out, const BitVec& extent,
         const BitVec& intent, int next) {
  out.push_back({extent, intent});
  const int m = ctx.attribute_count();
  for (int j = next; j < m; ++j) {
    if (intent.get(std::size_t(j))) continue;
    BitVec attrs = intent;
    attrs.set(std::size_t(j));
    BitVec ext = ctx.derive_obj(attrs);
    BitVec in = ctx.derive_attr(ext);
    bool canonical = true;
    for (int q = 0; q < j; ++q)
      if (in.get(std::size_t(q)) && !intent.get(std::size_t(q))) {
        canonical = false;
        break;
      }
    if (canonical) cbo(ctx, out, ext, in, j + 1);
  }
}

}  // namespace

std::vector<Concept> enumerate_concepts(const Context& ctx) {
  std::vector<Concept> out;
  BitVec all(static_cast<std::size_t>(ctx.object_count()));
  fill_all(all);
  cbo(ctx, out, all, ctx.derive_attr(all), 0);
  std::sort(out.begin(), out.end(),
            [](const Concept& a, const Concept& b) { return intent_lex_less(a.intent, b.intent); });
  return out;
}

ConceptLattice build_concept_lattice(const Context& ctx) {
  std::vector<Concept> concepts = enumerate_concepts(ctx);
  const std::size_t k = concepts.size();
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t i = 0; i < k; ++i) names.push_back("c" + std::to_string(i));
  BitRows leq(k, k);
  for (std::size_t y = 0; y < k; ++y)
    for (std::size_t x = 0; x < k; ++x)
      if (is_subset(concepts[x].intent, concepts[y].intent)) leq.set(y, x);
  ConceptLattice cl{Lattice::from_order(names, leq), std::vector<Concept>(k),
                    ctx.objects(), ctx.attributes()};
  for (std::size_t i = 0; i < k; ++i)
    cl.concepts[std::size_t(cl.lattice.index(names[i]))] = std::move(concepts[i]);
  return cl;
}

LabeledSignal attach_signal(const ConceptLattice& cl, const std::vector<double>& labels) {
  if (labels.size() != cl.objects.size())
    fail(Errc::MissingLabel, "need one label per object");
  LabeledSignal out;
  out.signal.resize(cl.concepts.size(), 0.0);
  for (std::size_t i = 0; i < cl.concepts.size(); ++i) {
    const BitVec& ext = cl.concepts[i].extent;
    const std::size_t cnt = ext.count();
    if (cnt == 0) {
      out.empty_extent = true;
      continue;
    }
    double acc = 0.0;
    ext.for_each([&](std::size_t o) { acc += labels[o]; });
    out.signal[i] = acc / double(cnt);
  }
  return out;
}

LabeledSignal attach_signal(const ConceptLattice& cl,
                            const std::map<std::string, double>& labels) {
  std::vector<double> v;
  v.reserve(cl.objects.size());
  for (const std::string& o : cl.objects) {
    auto it = labels.find(o);
    if (it == labels.end()) fail(Errc::MissingLabel, "no label for object " + o);
    v.push_back(it->second);
  }
  return attach_signal(cl, v);
}

Context reconstruct_context(const ConceptLattice& cl) {
  Context ctx(cl.objects, cl.attributes);
  for (const Concept& c : cl.concepts)
    c.extent.for_each([&](std::size_t o) {
      c.intent.for_each([&](std::size_t a) {
        if (!ctx.incident(int(o), int(a))) ctx.relate(int(o), int(a));
      });
    });
  return ctx;
}

}  // namespace latdsp
