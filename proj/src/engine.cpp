#include "entroute/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace entroute {

std::string mode_name(ForwardingMode mode) {
    return mode == ForwardingMode::Opportunistic ? "OPP" : "NOPP";
}

void SimConfig::validate() const {
    if (!(p_gen > 0.0) || p_gen > 1.0) {
        throw std::invalid_argument("p_gen must be in (0, 1]");
    }
    if (!(p_swap >= 0.0) || p_swap > 1.0) {
        throw std::invalid_argument("p_swap must be in [0, 1]");
    }
    if (lifetime < 1) {
        throw std::invalid_argument("lifetime must be positive");
    }
    if (requests < 0) {
        throw std::invalid_argument("request count must be nonnegative");
    }
    if (degree < 1) {
        throw std::invalid_argument("opportunism degree must be at least 1");
    }
    if (slot_cap < 1) {
        throw std::invalid_argument("slot cap must be positive");
    }
}

double EpisodeMetrics::mean_total_waiting() const {
    std::int64_t sum = 0;
    std::int64_t count = 0;
    for (std::int64_t w : total_waiting) {
        if (w >= 0) {
            sum += w;
            ++count;
        }
    }
    return count > 0 ? static_cast<double>(sum) / static_cast<double>(count) : 0.0;
}

double EpisodeMetrics::mean_link_waiting() const {
    if (link_wait_samples.empty()) {
        return 0.0;
    }
    std::int64_t sum = 0;
    for (std::int64_t w : link_wait_samples) {
        sum += w;
    }
    return static_cast<double>(sum) / static_cast<double>(link_wait_samples.size());
}

Engine::Engine(const SimConfig& config, const Topology& topo, std::vector<Request> requests,
               std::vector<PathPlan> plans, RngStream rng)
    : config_(config), topo_(&topo), rng_(rng) {
    config_.validate();
    if (requests.size() != plans.size()) {
        throw std::invalid_argument("one plan per request required");
    }
    links_.resize(topo.link_count());
    generation_durations_.resize(topo.link_count());
    requests_.reserve(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) {
        if (requests[i].id != static_cast<int>(i)) {
            throw std::invalid_argument("request ids must be dense and ordered");
        }
        RequestState state;
        state.request = requests[i];
        state.plan = std::move(plans[i]);
        if (state.plan.primaries.empty()) {
            throw std::invalid_argument("plan has no primary path");
        }

        std::unordered_set<LinkIndex> seen;
        for (const Path& path : state.plan.primaries) {
            for (LinkIndex link : path.links) {
                if (seen.insert(link).second) {
                    state.footprint.push_back(link);
                }
            }
        }
        for (const auto& [replaced, detour] : state.plan.recovery) {
            (void)replaced;
            for (LinkIndex link : detour.links) {
                if (seen.insert(link).second) {
                    state.footprint.push_back(link);
                }
            }
        }
        std::sort(state.footprint.begin(), state.footprint.end());
        requests_.push_back(std::move(state));
    }
    // Reservations in request-id order.
    for (auto& state : requests_) {
        for (LinkIndex link : state.footprint) {
            claim(link, state.request.id);
        }
    }
    // Single-path plans are committed from the start.
    for (auto& state : requests_) {
        if (state.plan.primaries.size() == 1) {
            commit_to_path(state, 0);
        }
    }
}

std::optional<int> Engine::claim_head(LinkIndex link) const {
    if (links_[link].claims.empty()) {
        return std::nullopt;
    }
    return links_[link].claims.front();
}

void Engine::claim(LinkIndex link, int id) {
    auto& claims = links_[link].claims;
    auto it = std::lower_bound(claims.begin(), claims.end(), id);
    if (it == claims.end() || *it != id) {
        claims.insert(it, id);
    }
}

void Engine::unclaim(LinkIndex link, int id) {
    auto& claims = links_[link].claims;
    auto it = std::lower_bound(claims.begin(), claims.end(), id);
    if (it != claims.end() && *it == id) {
        claims.erase(it);
    }
}

bool Engine::link_available(LinkIndex link, int id) const {
    const LinkState& state = links_[link];
    return state.generated && state.committed_by == -1 && !state.claims.empty() &&
           state.claims.front() == id;
}

int Engine::window_target(const RequestState& state, const Path& path) const {
    const int length = path.length();
    if (config_.mode == ForwardingMode::NonOpportunistic) {
        return length;
    }
    return std::min(state.frontier + config_.degree, length);
}

void Engine::commit_to_path(RequestState& state, int path_index) {
    state.active_path = path_index;
    state.working = state.plan.primaries[path_index];
    if (state.plan.primaries.size() > 1) {
        // Release the losing candidates' links for the queued requests.
        std::unordered_set<LinkIndex> kept(state.working.links.begin(), state.working.links.end());
        for (const auto& [replaced, detour] : state.plan.recovery) {
            (void)replaced;
            kept.insert(detour.links.begin(), detour.links.end());
        }
        std::vector<LinkIndex> reduced;
        for (LinkIndex link : state.footprint) {
            if (kept.count(link) != 0) {
                reduced.push_back(link);
            } else {
                unclaim(link, state.request.id);
            }
        }
        state.footprint = std::move(reduced);
    }
}

bool Engine::try_extend_chain(RequestState& state, const Path& candidate, int path_index) {
    const int id = state.request.id;
    Path working = candidate;
    bool spliced = false;

    for (;;) {
        const int target = window_target(state, working);
        if (target <= state.chain_end) {
            return false; // window already committed
        }
        bool all_available = true;
        bool restart = false;
        for (int pos = state.chain_end; pos < target; ++pos) {
            const LinkIndex link = working.links[pos];
            if (link_available(link, id)) {
                continue;
            }
            // A missing primary link may be replaced by its detour when the
            // whole detour is generated and reserved to this request.
            auto detour_it = state.plan.recovery.find(link);
            if (detour_it == state.plan.recovery.end()) {
                all_available = false;
                break;
            }
            const Path& detour = detour_it->second;
            bool detour_ready = true;
            for (LinkIndex dlink : detour.links) {
                if (!link_available(dlink, id)) {
                    detour_ready = false;
                    break;
                }
            }
            if (!detour_ready) {
                all_available = false;
                break;
            }
            // Splice only when the result stays a simple path.
            std::unordered_set<NodeId> in_use(working.nodes.begin(), working.nodes.end());
            bool clean = true;
            for (std::size_t i = 1; i + 1 < detour.nodes.size(); ++i) {
                if (in_use.count(detour.nodes[i]) != 0) {
                    clean = false;
                    break;
                }
            }
            if (!clean) {
                all_available = false;
                break;
            }
            const NodeId from = working.nodes[pos];
            std::vector<NodeId> spliced_nodes(working.nodes.begin(), working.nodes.begin() + pos + 1);
            if (detour.nodes.front() == from) {
                spliced_nodes.insert(spliced_nodes.end(), detour.nodes.begin() + 1, detour.nodes.end());
            } else {
                spliced_nodes.insert(spliced_nodes.end(), detour.nodes.rbegin() + 1, detour.nodes.rend());
            }
            spliced_nodes.insert(spliced_nodes.end(), working.nodes.begin() + pos + 2,
                                 working.nodes.end());
            working = topo_->make_path(spliced_nodes);
            spliced = true;
            restart = true;
            break;
        }
        if (restart) {
            continue;
        }
        if (!all_available) {
            return false;
        }
        // Trigger fires: adopt the (possibly spliced) path and commit the
        // window.
        if (state.active_path == -1) {
            commit_to_path(state, path_index);
        }
        if (spliced) {
            state.working = std::move(working);
        }
        for (int pos = state.chain_end; pos < target; ++pos) {
            links_[state.working.links[pos]].committed_by = id;
        }
        state.chain_end = target;
        state.phase = Phase::Swapping;
        return true;
    }
}

void Engine::consume_link(LinkIndex link, bool release_claim, int id) {
    LinkState& state = links_[link];
    link_wait_samples_.push_back(slot_ - state.generated_slot);
    generation_durations_[link].push_back(state.generated_slot - state.last_consumed_slot);
    state.generated = false;
    state.age = 0;
    state.committed_by = -1;
    state.last_consumed_slot = slot_;
    if (release_claim) {
        unclaim(link, id);
    }
}

void Engine::fuse_next(RequestState& state) {
    const LinkIndex link = state.working.links[state.frontier];
    consume_link(link, /*release_claim=*/true, state.request.id);
    ++state.frontier;
    if (state.frontier == state.working.length()) {
        deliver(state);
    }
}

void Engine::collapse_chain(RequestState& state) {
    for (int pos = state.frontier; pos < state.chain_end; ++pos) {
        consume_link(state.working.links[pos], /*release_claim=*/false, state.request.id);
    }
    state.frontier = 0;
    state.chain_end = 0;
    state.phase = Phase::Pending;
    // Restart from scratch on the committed primary; detour substitutions
    // of the failed attempt are forgotten.
    state.working = state.plan.primaries[state.active_path];
    for (LinkIndex link : state.footprint) {
        claim(link, state.request.id);
    }
}

void Engine::deliver(RequestState& state) {
    state.phase = Phase::Delivered;
    state.delivered_slot = slot_;
    ++delivered_count_;
    for (LinkIndex link : state.footprint) {
        unclaim(link, state.request.id);
    }
}

void Engine::stage_generation() {
    for (LinkIndex i = 0; i < links_.size(); ++i) {
        LinkState& link = links_[i];
        if (link.generated || link.claims.empty()) {
            continue;
        }
        if (rng_.bernoulli(config_.p_gen)) {
            link.generated = true;
            link.age = 0;
            link.generated_slot = slot_;
        }
    }
}

void Engine::stage_triggers() {
    for (auto& state : requests_) {
        if (state.phase == Phase::Delivered) {
            continue;
        }
        if (config_.swap_timing == SwapTiming::Instant) {
            run_instant_chains(state);
            continue;
        }
        if (state.active_path >= 0) {
            try_extend_chain(state, state.working, state.active_path);
        } else {
            // Candidate paths race; the first whose trigger fires wins.
            for (int p = 0; p < static_cast<int>(state.plan.primaries.size()); ++p) {
                if (try_extend_chain(state, state.plan.primaries[p], p)) {
                    break;
                }
            }
        }
    }
}

void Engine::run_instant_chains(RequestState& state) {
    for (;;) {
        bool extended = false;
        if (state.active_path >= 0) {
            extended = try_extend_chain(state, state.working, state.active_path);
        } else {
            for (int p = 0; p < static_cast<int>(state.plan.primaries.size()); ++p) {
                if (try_extend_chain(state, state.plan.primaries[p], p)) {
                    extended = true;
                    break;
                }
            }
        }
        if (!extended && state.chain_end == state.frontier) {
            return;
        }
        while (state.frontier < state.chain_end) {
            fuse_next(state);
            if (state.phase == Phase::Delivered) {
                return;
            }
        }
        if (!extended) {
            return;
        }
    }
}

void Engine::stage_swaps() {
    for (auto& state : requests_) {
        if (state.phase != Phase::Swapping || state.chain_end == state.frontier) {
            continue;
        }
        // One chain operation per slot: anchoring onto the first link is
        // bookkeeping; every later extension is a real swap.
        const bool success = state.frontier == 0 || rng_.bernoulli(config_.p_swap);
        if (success) {
            fuse_next(state);
        } else {
            collapse_chain(state);
        }
    }
}

void Engine::stage_aging() {
    if (config_.lifetime == kInfiniteLifetime) {
        return;
    }
    for (LinkIndex i = 0; i < links_.size(); ++i) {
        LinkState& link = links_[i];
        if (!link.generated || link.committed_by != -1) {
            continue;
        }
        ++link.age;
        if (link.age >= config_.lifetime) {
            // Expired without being consumed; it occupied the link for a
            // full lifetime.
            link_wait_samples_.push_back(slot_ - link.generated_slot + 1);
            link.generated = false;
            link.age = 0;
        }
    }
}

void Engine::run_slot() {
    ++slot_;
    stage_generation();
    stage_triggers();
    if (config_.swap_timing == SwapTiming::PerSlot) {
        stage_swaps();
    }
    stage_aging();
}

EpisodeMetrics Engine::take_metrics() {
    EpisodeMetrics metrics;
    metrics.slots = slot_;
    metrics.total_waiting.reserve(requests_.size());
    metrics.delivered_paths.resize(requests_.size());
    for (const auto& state : requests_) {
        metrics.total_waiting.push_back(state.delivered_slot);
        if (state.phase == Phase::Delivered) {
            metrics.delivered_paths[state.request.id] = state.working.nodes;
        } else {
            ++metrics.undelivered;
        }
    }
    metrics.completed = metrics.undelivered == 0;
    metrics.link_wait_samples = std::move(link_wait_samples_);
    metrics.generation_durations = std::move(generation_durations_);
    return metrics;
}

EpisodeMetrics run_episode(const SimConfig& config, const Topology& topo,
                           const std::vector<Request>& requests,
                           const std::vector<PathPlan>& plans, RngStream rng) {
    Engine engine(config, topo, requests, plans, rng);
    while (!engine.all_delivered() && engine.current_slot() < config.slot_cap) {
        engine.run_slot();
    }
    return engine.take_metrics();
}

} // namespace entroute
