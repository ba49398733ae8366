#ifndef ENTROUTE_ENGINE_HPP
#define ENTROUTE_ENGINE_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "entroute/rng.hpp"
#include "entroute/routing.hpp"
#include "entroute/topology.hpp"

namespace entroute {

inline constexpr std::int64_t kInfiniteLifetime = std::numeric_limits<std::int64_t>::max();

enum class ForwardingMode { Opportunistic, NonOpportunistic };

/// Swap-chain timing. PerSlot is the physical model: one chain operation
/// per request per slot. Instant collapses a triggered chain in the same
/// slot without swap failures; it exists to cross-validate the engine
/// against the line-network waiting-time recursion.
enum class SwapTiming { PerSlot, Instant };

std::string mode_name(ForwardingMode mode);

struct SimConfig {
    double p_gen = 0.5;
    double p_swap = 1.0;
    std::int64_t lifetime = kInfiniteLifetime;
    int requests = 1;
    /// Links of a line / side of a grid, depending on topology.
    int size = 5;
    /// Opportunism degree; ignored in non-opportunistic mode.
    int degree = 1;
    Algorithm algorithm = Algorithm::MG;
    ForwardingMode mode = ForwardingMode::Opportunistic;
    std::uint64_t seed = 0;
    std::int64_t slot_cap = 1'000'000;
    SwapTiming swap_timing = SwapTiming::PerSlot;

    void validate() const;
};

struct Request {
    int id = 0;
    NodeId source = 0;
    NodeId dest = 0;
};

struct EpisodeMetrics {
    /// Delivered slot per request id (requests are created at slot 0, so
    /// this is the total waiting time); -1 when undelivered.
    std::vector<std::int64_t> total_waiting;
    /// Slots each generated link spent waiting before it was consumed
    /// (by a swap chain or a chain collapse) or expired.
    std::vector<std::int64_t> link_wait_samples;
    /// Final node sequence each delivered request used (after any detour
    /// substitutions); empty for undelivered requests.
    std::vector<std::vector<NodeId>> delivered_paths;
    /// Completed generation spans per link, in slots, in consumption order.
    /// Under infinite lifetimes these are the observed per-link generation
    /// times, one entry per serving.
    std::vector<std::vector<std::int64_t>> generation_durations;
    std::int64_t slots = 0;
    bool completed = false;
    int undelivered = 0;

    double mean_total_waiting() const;
    double mean_link_waiting() const;
};

/// The slotted-time simulator. Each slot runs four stages in a fixed order:
/// link generation, forwarding triggers, swap steps, then aging/expiry.
/// Everything is deterministic given the RngStream.
class Engine {
public:
    Engine(const SimConfig& config, const Topology& topo, std::vector<Request> requests,
           std::vector<PathPlan> plans, RngStream rng);

    void run_slot();
    bool all_delivered() const { return delivered_count_ == static_cast<int>(requests_.size()); }
    std::int64_t current_slot() const { return slot_; }

    EpisodeMetrics take_metrics();

    // Inspection hooks for tests.
    std::int64_t delivered_slot(int id) const { return requests_[id].delivered_slot; }
    int frontier(int id) const { return requests_[id].frontier; }
    bool link_generated(LinkIndex link) const { return links_[link].generated; }
    std::int64_t link_age(LinkIndex link) const { return links_[link].age; }
    std::optional<int> claim_head(LinkIndex link) const;

private:
    enum class Phase { Pending, Swapping, Delivered };

    struct LinkState {
        bool generated = false;
        std::int64_t age = 0;
        std::int64_t generated_slot = 0;
        std::int64_t last_consumed_slot = 0;
        int committed_by = -1;
        std::vector<int> claims; // ascending request ids; front() is served
    };

    struct RequestState {
        Request request;
        PathPlan plan;
        int active_path = -1;
        Path working;
        int frontier = 0;
        int chain_end = 0;
        Phase phase = Phase::Pending;
        std::int64_t delivered_slot = -1;
        std::vector<LinkIndex> footprint; // links kept reserved until delivery
    };

    void stage_generation();
    void stage_triggers();
    void stage_swaps();
    void stage_aging();

    bool link_available(LinkIndex link, int id) const;
    /// Extends the committed chain of `state` along `candidate` up to the
    /// forwarding window if every window link is available, substituting
    /// detours where allowed. Returns true when the chain grew.
    bool try_extend_chain(RequestState& state, const Path& candidate, int path_index);
    void commit_to_path(RequestState& state, int path_index);
    int window_target(const RequestState& state, const Path& path) const;

    void claim(LinkIndex link, int id);
    void unclaim(LinkIndex link, int id);
    void consume_link(LinkIndex link, bool release_claim, int id);
    void fuse_next(RequestState& state);
    void collapse_chain(RequestState& state);
    void deliver(RequestState& state);
    void run_instant_chains(RequestState& state);

    SimConfig config_;
    const Topology* topo_;
    std::vector<RequestState> requests_;
    std::vector<LinkState> links_;
    RngStream rng_;
    std::int64_t slot_ = 0;
    int delivered_count_ = 0;
    std::vector<std::int64_t> link_wait_samples_;
    std::vector<std::vector<std::int64_t>> generation_durations_;
};

/// Runs slots until every request is delivered or the slot cap is hit.
EpisodeMetrics run_episode(const SimConfig& config, const Topology& topo,
                           const std::vector<Request>& requests,
                           const std::vector<PathPlan>& plans, RngStream rng);

} // namespace entroute

#endif // ENTROUTE_ENGINE_HPP
