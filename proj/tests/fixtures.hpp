#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "minones/formula.hpp"
#include "minones/relation.hpp"

namespace fixtures {

inline minones::Relation rel(const std::string& name, std::initializer_list<const char*> tuples) {
  std::vector<minones::BoolTuple> ts;
  int arity = 0;
  for (const char* t : tuples) {
    ts.push_back(minones::BoolTuple::from_string(t));
    arity = ts.back().arity();
  }
  return minones::Relation(name, arity, ts);
}

inline minones::Relation or2() { return rel("OR2", {"01", "10", "11"}); }
inline minones::Relation nand2() { return rel("NAND2", {"00", "01", "10"}); }
inline minones::Relation impl() { return rel("IMPL", {"00", "01", "11"}); }
inline minones::Relation even3() { return rel("EVEN3", {"000", "110", "101", "011"}); }
inline minones::Relation odd3() { return rel("ODD3", {"100", "010", "001", "111"}); }
// (x = y) -> z
inline minones::Relation eq_impl() {
  return minones::Relation::from_predicate("EQIMPL", 3, [](std::uint32_t t) {
    const bool x = t & 1U, y = t & 2U, z = t & 4U;
    return x != y || z;
  });
}
// x -> (y or z)
inline minones::Relation impl3() {
  return minones::Relation::from_predicate("IMPL3", 3, [](std::uint32_t t) {
    const bool x = t & 1U, y = t & 2U, z = t & 4U;
    return !x || y || z;
  });
}
inline minones::Relation sel3() { return rel("SEL3", {"000", "100", "010", "111"}); }
inline minones::Relation rex() { return rel("REX", {"0010", "0100", "0101", "1000", "1001", "1110", "1111"}); }

inline std::shared_ptr<const minones::ConstraintLanguage> language(std::vector<minones::Relation> rs) {
  return std::make_shared<const minones::ConstraintLanguage>(std::move(rs));
}

}  // namespace fixtures
