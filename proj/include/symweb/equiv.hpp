#ifndef SYMWEB_EQUIV_HPP
#define SYMWEB_EQUIV_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symweb/endo.hpp"
#include "symweb/web.hpp"

namespace symweb {

struct EnumOptions {
    // 0 picks the documented default of each operation (100'000'000 for
    // the searches and censuses, 30'000'000 for the stabilizer loop)
    std::uint64_t max_enum = 0;
    unsigned threads = 1;
};

constexpr std::uint64_t kDefaultEnumCap = 100'000'000ULL;
constexpr std::uint64_t kDefaultStabilizerCap = 30'000'000ULL;

inline std::uint64_t effective_cap(const EnumOptions& opt, std::uint64_t fallback) {
    return opt.max_enum ? opt.max_enum : fallback;
}

enum class EquivKind { Congruence, FullOrbit, ModuleIso };

// "cong", "full" or "module"
EquivKind parse_equiv_kind(std::string_view name);

// Witness for M' = a tP M P; finite fields only, exhaustive search over
// GL_{n+1}(F_q) with the cap applied to the group order.
std::optional<std::pair<Scalar, Mat>> congruent(const SymWeb& M, const SymWeb& Mp,
                                                const EnumOptions& opt = {});

// Witness (A, P) with M.(A,P) = M'; finite fields only.
std::optional<GroupElem> full_orbit_equivalent(const SymWeb& M, const SymWeb& Mp,
                                               const EnumOptions& opt = {});

struct ModuleIsoResult {
    enum Verdict { Witness, Absent, AbsentProbabilistic } verdict;
    std::optional<std::pair<Mat, Mat>> uv; // U M_i V = M'_i
};

// Cokernel isomorphism, decided through the linear space
// {(U, W) : U M_i = M'_i W} and the open condition det U != 0. Exhaustive
// over F_q; randomized over Q (probabilistic absence is reported as such).
ModuleIsoResult module_isomorphic(const SymWeb& M, const SymWeb& Mp,
                                  const EnumOptions& opt = {});

struct FiberReport {
    SymWeb base;
    std::vector<SymWeb> reps;
    std::uint64_t group_order = 0;
    bool pairwise_inequivalent = false;
    bool action_transitive_verified = false;
};

// The fiber of Phi through M as webs M . R over the unit coset
// representatives R of L^x / k^x L^x2. Requires M geometrically reduced
// over a finite field.
FiberReport fiber_enumerate(const SymWeb& M, const EnumOptions& opt = {});

struct CensusModuleClass {
    int id = 0;
    std::vector<std::uint64_t> class_min_codes; // per congruence class, ascending
    int r = -1;                                 // -1 when not available
    std::optional<std::uint64_t> predicted;
};

struct CensusResult {
    Field field = Field::rationals();
    int m = 0, n = 0;
    std::uint64_t total_webs = 0;
    std::uint64_t matching_webs = 0;
    std::vector<CensusModuleClass> module_classes;
    std::unordered_map<std::uint64_t, std::pair<int, int>> class_of_code; // code -> (module id, global class id)

    std::string table_text() const;
    // (module class id, congruence class id) of a web with disc
    // proportional to the target
    std::optional<std::pair<int, int>> locate(const SymWeb& w) const;
};

// Exhaustively partitions {webs with disc proportional to target} into
// congruence classes (union-find under group generators), grouped by
// module isomorphism. The ground-truth oracle for fiber_enumerate.
CensusResult census(Field f, int m, int n, const MPoly& target, const EnumOptions& opt = {});

// canonical integer code of a finite-field web (base-q digits over the
// upper-triangle entries of each matrix)
std::uint64_t web_code(const SymWeb& w);

} // namespace symweb

#endif
