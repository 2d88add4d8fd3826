#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace linefree {

struct CertifyOptions {
    bool paper_faithful = false;
    int threads = 1;
    // Compute r_p(F_p^2) and r_{p-1}(F_p^2) by search instead of the table.
    bool plane_values_from_search = false;
    double search_budget_seconds = 600;
    long long max_vectors = 0;  // 0 means unlimited
    std::optional<long long> max_plane_override;
    std::optional<long long> sub_plane_override;
};

struct ExclusionInstance {
    int p = 0;
    long long target = 0;
    long long max_plane = 0;  // M = r_p(F_p^2)
    long long sub_plane = 0;  // r_{p-1}(F_p^2)
    std::string plane_value_source;
    long long line_plane_sum = 0;  // (T-(p-1)) + (p+1)(p-1)
    long long min_line_plane = 0;  // L
    std::vector<long long> allowed_sizes;
    long long num_classes = 0;
    int planes_per_pair = 0;
};

ExclusionInstance make_instance(int p, long long target, const CertifyOptions& opt = {});

std::vector<long long> allowed_plane_sizes(const ExclusionInstance& inst);

// Multisets are stored ascending; lists are sorted lexicographically.
std::vector<std::vector<long long>> class_distributions(const ExclusionInstance& inst);

struct PairEquation {
    std::vector<long long> coefficients;  // sum of C(s,2) per distribution
    long long rhs = 0;                    // (p+1) C(T,2)
    long long class_count = 0;            // (p^3-1)/(p-1)
};

PairEquation pair_equation(const ExclusionInstance& inst, const std::vector<std::vector<long long>>& dists);

std::vector<std::vector<long long>> line_plane_multisets(const ExclusionInstance& inst);

struct NullWeights {
    std::vector<long long> sizes;  // descending
    int dimension = 0;
    std::vector<std::vector<long long>> basis;  // primitive, leading nonzero entry positive
    std::vector<long long> weights;             // basis[0] when dimension == 1
};

NullWeights null_weights(const std::vector<std::vector<long long>>& multisets, const std::vector<long long>& sizes);

// Bounds on the number of (p-1)-lines in one plane of a given size.
struct SizeBound {
    long long size = 0;
    long long lo = 0;
    std::string lo_source;
    std::optional<long long> hi;  // empty means unbounded
    std::string hi_source;
    bool impossible = false;  // the line LP has no solution at this size
};

struct SweepEntry {
    std::vector<long long> counts;  // class count per distribution
    std::vector<long long> planes;  // N_s per weighted size
    std::optional<long long> min;   // of sum w_s P_s; empty means -infinity
    std::optional<long long> max;   // empty means +infinity
    std::string refuted_by;         // empty when not refuted
};

enum class Verdict { Infeasible, Unknown };

struct Certificate {
    ExclusionInstance instance;
    bool paper_faithful = false;
    std::string shortcut;
    std::vector<std::vector<long long>> distributions;
    PairEquation pairs;
    std::vector<std::vector<long long>> multisets;
    NullWeights weights;
    std::vector<SizeBound> bounds;
    std::vector<SweepEntry> sweep;
    long long vectors_checked = 0;
    bool sweep_complete = false;
    Verdict verdict = Verdict::Unknown;
    std::string reason;
};

// INFEASIBLE means no p-progression-free subset of F_p^3 has T points.
Certificate prove_infeasible(int p, long long target, const CertifyOptions& opt = {});

nlohmann::ordered_json certificate_json(const Certificate& c);
std::string certificate_text(const Certificate& c, std::size_t max_log_lines = 40);
const char* verdict_name(Verdict v);

struct ReplayResult {
    bool ok = false;
    std::string message;
};

// Re-derives the certificate from its instance data and re-checks every
// logged inequality.
ReplayResult replay_certificate(const nlohmann::ordered_json& cert);

}  // namespace linefree
