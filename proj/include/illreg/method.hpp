#pragma once

#include <array>
#include <string>
#include <string_view>

namespace illreg {

/// The five regularization schemes compared throughout the library.
///   nrm  - exponent penalty ||(I - (A^T A)^sqrt(alpha)) x||^2
///   tik  - Tikhonov
///   tsvd - spectral cut-off, alpha is the threshold on sigma^2
///   sw   - Showalter (asymptotic regularization)
///   cg   - conjugate gradient on the normal equations (CGLS)
enum class MethodKind { nrm, tik, tsvd, sw, cg };

inline constexpr std::array<MethodKind, 5> kAllMethods = {
    MethodKind::nrm, MethodKind::tik, MethodKind::tsvd, MethodKind::sw, MethodKind::cg};

/// A method together with the kind of parameter it consumes.
struct MethodSpec {
  MethodKind kind = MethodKind::nrm;

  /// cg is parameterized by an iteration count k >= 1; everything else by alpha > 0.
  [[nodiscard]] constexpr bool discrete() const noexcept { return kind == MethodKind::cg; }
  /// Methods x = g_alpha(A^T A) A^T y that are linear in the data.
  [[nodiscard]] constexpr bool is_filter() const noexcept { return kind != MethodKind::cg; }
};

std::string_view to_string(MethodKind kind) noexcept;

/// Throws InputError on unknown names.
MethodKind parse_method(std::string_view name);

}  // namespace illreg
