#include "illreg/method.hpp"

#include <string>

#include "illreg/errors.hpp"

namespace illreg {

std::string_view to_string(MethodKind kind) noexcept {
  switch (kind) {
    case MethodKind::nrm: return "nrm";
    case MethodKind::tik: return "tik";
    case MethodKind::tsvd: return "tsvd";
    case MethodKind::sw: return "sw";
    case MethodKind::cg: return "cg";
  }
  return "?";
}

MethodKind parse_method(std::string_view name) {
  for (MethodKind k : kAllMethods) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown method '" + std::string(name) + "' (expected nrm, tik, tsvd, sw or cg)");
}

}  // namespace illreg
