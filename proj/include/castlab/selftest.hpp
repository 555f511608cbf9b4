#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace castlab {

// RFC 2144 Appendix B.1 single-block vectors. Keys of 80 bits or fewer use
// the RFC's 12-round form.
struct KnownAnswer {
  std::string_view key_hex;
  std::string_view plain_hex;
  std::string_view cipher_hex;
  int rounds;
};

inline constexpr std::array<KnownAnswer, 3> kRfcVectors{{
    {"0123456712345678234567893456789A", "0123456789ABCDEF", "238B4FE5847E44B2", 16},
    {"01234567123456782345", "0123456789ABCDEF", "EB6A711A2C02271B", 12},
    {"0123456712", "0123456789ABCDEF", "7AC816D16E9B302E", 12},
}};

// RFC 2144 Appendix B.2 full maintenance test results after 10^6 iterations.
inline constexpr std::string_view kMaintenanceStartHex = "0123456712345678234567893456789A";
inline constexpr std::string_view kMaintenanceFinalA = "EEA9D0A249FD3BA6B3436FB89D6DCA92";
inline constexpr std::string_view kMaintenanceFinalB = "B2C95EB00C31AD7180AC05B8E83D696E";

struct MaintenanceResult {
  std::string a_hex;
  std::string b_hex;
};

MaintenanceResult run_maintenance_test(std::uint64_t iterations = 1'000'000);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Known-answer vectors, the maintenance test, and a quick pass over the
// cipher invariants (roundtrip, type-1 identity, rotation range, variant
// divergence, ECB/PKCS#7 roundtrip, PRNG reference output).
std::vector<CheckResult> run_selftest(bool include_maintenance = true);

}  // namespace castlab
