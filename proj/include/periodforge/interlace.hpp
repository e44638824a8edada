#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "periodforge/hodge.hpp"

namespace pf {

// M has rank t+1, N has rank t; both regular, same profile.
bool check_interlace(const HodgeFamily& fM, const HodgeFamily& fN, int Q);
bool check_strong_interlace(const HodgeFamily& fM, const HodgeFamily& fN, int Q);

struct InterlaceReport {
    bool holds = false;
    int lo = 0, hi = -1;  // Q range, empty when lo > hi
    std::vector<std::string> notes;
};

// scans Q in [-B, B] with B = 2 (max|p| + 1)
InterlaceReport interlace_range(const HodgeFamily& fM, const HodgeFamily& fN, bool strong);
int scan_bound(const HodgeFamily& fM, const HodgeFamily& fN);

int q_value(const HodgeFamily& fM, const HodgeFamily& fN, int place);

// Hodge pairs of the tensor module at a place: tau x tau at a real place, all four
// (tau~, tau~') combinations at a complex place
std::vector<HodgePair> tensor_pairs_at(const HodgeFamily& fM, const HodgeFamily& fN, int place);

struct TensorPartition {
    int q = 0;
    std::vector<int> below;    // first coordinates < q
    std::vector<int> atabove;  // first coordinates >= q
};
TensorPartition partition_tensor(const HodgeFamily& fM, const HodgeFamily& fN, int place);

struct FilResult {
    bool holds = false;
    std::optional<int> q_minus;  // for F^- (quotient matches the + eigenspace)
    std::optional<int> q_plus;
    std::string reason;
    // single q when both agree
    std::optional<int> q() const {
        if (holds && q_minus && q_plus && *q_minus == *q_plus) return q_minus;
        return std::nullopt;
    }
};
FilResult fil_condition(const HodgeFamily& fM, const HodgeFamily& fN, int place);

}  // namespace pf
