#pragma once

#include <stdexcept>
#include <string>

namespace guesswork {

enum class errc {
  empty_or_singleton,
  non_positive_entry,
  order_at_one,
  out_of_range,
  dimension_mismatch,
  uniform_base,
  out_of_entropy_range,
  too_many_classes,
  mode_unavailable,
  too_large,
  equal_entropy,
  uniform_input,
  out_of_regime,
  infeasible,
  resource_guard,
  not_found,
  ill_conditioned,
};

// true for guard-type failures (CLI exit code 3), false for validation (exit code 2)
inline bool is_resource_error(errc c) {
  return c == errc::too_many_classes || c == errc::too_large ||
         c == errc::resource_guard;
}

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_or_singleton: return "EmptyOrSingleton";
    case errc::non_positive_entry: return "NonPositiveEntry";
    case errc::order_at_one: return "OrderAtOne";
    case errc::out_of_range: return "OutOfRange";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::uniform_base: return "UniformBase";
    case errc::out_of_entropy_range: return "OutOfEntropyRange";
    case errc::too_many_classes: return "TooManyClasses";
    case errc::mode_unavailable: return "ModeUnavailable";
    case errc::too_large: return "TooLarge";
    case errc::equal_entropy: return "EqualEntropy";
    case errc::uniform_input: return "UniformInput";
    case errc::out_of_regime: return "OutOfRegime";
    case errc::infeasible: return "Infeasible";
    case errc::resource_guard: return "ResourceGuard";
    case errc::not_found: return "NotFound";
    case errc::ill_conditioned: return "IllConditioned";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

}  // namespace guesswork
