#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cow/scenario.hpp"

namespace cow {

enum class Region { Disk, Square };

/// One realization of K user positions, regenerable from its seed.
struct UserField {
    std::vector<PolarPoint> positions;
    std::uint64_t seed = 0;
    Region region = Region::Disk;
    double region_size = 0.0;  // disk radius, or square side length
};

/// Uniform user positions on a disk of radius `size` or on a `size` x `size`
/// square centered at the BS ground projection.
UserField make_user_field(std::uint64_t seed, int count, Region region, double size);

struct SearchRing {
    double r_s = 0.0;      // search radius, m
    double epsilon = 0.0;  // half-width, m
};

enum class SelectionStatus { PairFound, NoPair };

struct SelectionResult {
    SelectionStatus status = SelectionStatus::NoPair;
    std::array<int, 2> cu_indices = {-1, -1};
    SearchRing ring;             // valid when status == PairFound
    double chord = 0.0;          // d_{k1,k2}, m
    double z_c = 0.0;            // beam-axis length, m
    double waist_radius = 0.0;   // adjusted w0, m
    long iterations_inner = 0;   // total ring visits
    long iterations_outer = 0;   // epsilon passes
};

/// Indices of users whose radius lies in [r_s - eps, r_s + eps].
std::vector<int> potential_users(const UserField& field, const SearchRing& ring);

struct SelectOptions {
    /// Number of epsilon-doubling passes allowed; < 0 sweeps until
    /// epsilon exceeds the coverage radius.
    int max_outer_iterations = -1;
};

/// Ring-sweep CU pair selection. Returns the feasible pair of minimum chord
/// across the sweep at the terminating epsilon; failure is a status.
SelectionResult select_pair(const UserField& field, const ScenarioConfig& cfg,
                            const SelectOptions& opts = {});

/// (inner, outer) iteration ceilings of the ring sweep.
std::pair<long, long> iteration_bound(const ScenarioConfig& cfg);

}  // namespace cow
