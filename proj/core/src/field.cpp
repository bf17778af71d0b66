#include "kkit/field.hpp"

#include "kkit/errors.hpp"

namespace kkit {

KernelBasis kernel(const IntMatrix& m, std::uint64_t characteristic) {
  KernelBasis kb;
  kb.characteristic = characteristic;
  if (characteristic == 0) {
    kb.rat = kernel_rat(to_rational(m));
  } else {
    if (!is_prime_u64(characteristic))
      throw ConfigError("characteristic must be 0 or prime");
    GF f(characteristic);
    kb.fp = kernel_fp(reduce_mod(m, f), f);
  }
  return kb;
}

} // namespace kkit
