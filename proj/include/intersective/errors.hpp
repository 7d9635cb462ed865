#pragma once

#include <stdexcept>
#include <string>

namespace intersective {

enum class errc {
  disallowed_value,
  out_of_range,
  not_square_free,
  unfactorable,
  not_prime,
  invalid_argument,
  non_coprime_moduli,
  overflow,
  basis_missing_prime,
  too_few,
  too_many,
  not_distinct,
  non_residue,
  precondition_violated,
  not_one_mod_8,
  invalid_certificate,
  budget_exceeded,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::disallowed_value: return "disallowed_value";
    case errc::out_of_range: return "out_of_range";
    case errc::not_square_free: return "not_square_free";
    case errc::unfactorable: return "unfactorable";
    case errc::not_prime: return "not_prime";
    case errc::invalid_argument: return "invalid_argument";
    case errc::non_coprime_moduli: return "non_coprime_moduli";
    case errc::overflow: return "overflow";
    case errc::basis_missing_prime: return "basis_missing_prime";
    case errc::too_few: return "too_few";
    case errc::too_many: return "too_many";
    case errc::not_distinct: return "not_distinct";
    case errc::non_residue: return "non_residue";
    case errc::precondition_violated: return "precondition_violated";
    case errc::not_one_mod_8: return "not_one_mod_8";
    case errc::invalid_certificate: return "invalid_certificate";
    case errc::budget_exceeded: return "budget_exceeded";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace intersective
