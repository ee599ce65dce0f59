#ifndef HYPERTUPLE_COMMON_HPP
#define HYPERTUPLE_COMMON_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace hypertuple {

// Structured error carrying a stable machine-readable code next to the
// human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define HYPERTUPLE_DEFINE_ERROR(ClassName, code_str)                  \
  class ClassName : public Error {                                    \
   public:                                                            \
    explicit ClassName(const std::string& m) : Error(code_str, m) {}  \
  }

HYPERTUPLE_DEFINE_ERROR(DimensionMismatch, "dimension_mismatch");
HYPERTUPLE_DEFINE_ERROR(SingularMatrix, "singular_matrix");
HYPERTUPLE_DEFINE_ERROR(NumericalFailure, "numerical_failure");
HYPERTUPLE_DEFINE_ERROR(InvalidInput, "invalid_input");
HYPERTUPLE_DEFINE_ERROR(NonCommuting, "non_commuting");
HYPERTUPLE_DEFINE_ERROR(NotCyclicAlgebra, "not_cyclic_algebra");
HYPERTUPLE_DEFINE_ERROR(CharacterSeparationFailure, "character_separation_failure");
HYPERTUPLE_DEFINE_ERROR(NotInAlgebra, "not_in_algebra");
HYPERTUPLE_DEFINE_ERROR(NotInvertible, "not_invertible");
HYPERTUPLE_DEFINE_ERROR(RayHitsSpectrum, "ray_hits_spectrum");
HYPERTUPLE_DEFINE_ERROR(NoRealLog, "no_real_log");
HYPERTUPLE_DEFINE_ERROR(ComplexFieldError, "complex_field");
HYPERTUPLE_DEFINE_ERROR(DependentVectors, "dependent_vectors");
HYPERTUPLE_DEFINE_ERROR(SchemaError, "schema_error");

#undef HYPERTUPLE_DEFINE_ERROR

// Seeded RNG. Doubles are extracted from raw mt19937_64 output directly so
// the stream does not depend on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform in [-1, 1)
  double sym() { return 2.0 * unit() - 1.0; }

  // real and imaginary part uniform in [-1, 1)
  std::complex<double> complex_sym() {
    const double re = sym();
    const double im = sym();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hypertuple

#endif  // HYPERTUPLE_COMMON_HPP
