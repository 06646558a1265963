#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gaussint/divfunc.hpp"
#include "gaussint/serialize.hpp"

namespace gaussint {

inline constexpr const char* kSearchFormatVersion = "1";

enum class SearchKind { friendly, tau_perfect, norm_perfect };

inline const char* to_string(SearchKind k) {
    switch (k) {
        case SearchKind::friendly: return "friendly";
        case SearchKind::tau_perfect: return "tau-perfect";
        default: return "norm-perfect";
    }
}

inline SearchKind search_kind_from_string(const std::string& s) {
    if (s == "friendly") return SearchKind::friendly;
    if (s == "tau-perfect") return SearchKind::tau_perfect;
    if (s == "norm-perfect") return SearchKind::norm_perfect;
    throw parse_error("unknown search kind: " + s);
}

struct SearchTask {
    SearchKind kind = SearchKind::friendly;
    unsigned k = 1;
    uint64_t norm_lo = 1;
    uint64_t norm_hi = 1;
    std::optional<GaussianInt> tau; // tau-perfect: match this index exactly
    std::optional<mpz_class> t;     // norm-perfect: match this ||index|| exactly
    uint64_t block_size = 1000;

    void validate() const {
        if (norm_lo < 1 || norm_lo > norm_hi)
            throw domain_error("search: requires 1 <= norm_lo <= norm_hi");
        if (k == 0) throw domain_error("search: k must be positive");
        if (block_size == 0) throw domain_error("search: block size must be positive");
        if (tau && kind != SearchKind::tau_perfect)
            throw domain_error("search: --tau only applies to tau-perfect tasks");
        if (t && kind != SearchKind::norm_perfect)
            throw domain_error("search: --t only applies to norm-perfect tasks");
        if (tau && tau->norm() <= 1)
            throw domain_error("search: tau must satisfy ||tau|| > 1");
        if (t && *t <= 1) throw domain_error("search: t must exceed 1");
    }

    nlohmann::json fingerprint() const {
        nlohmann::json j{{"type", "header"},
                         {"version", kSearchFormatVersion},
                         {"kind", gaussint::to_string(kind)},
                         {"k", k},
                         {"norm_lo", norm_lo},
                         {"norm_hi", norm_hi},
                         {"block_size", block_size}};
        j["tau"] = tau ? nlohmann::json(to_string(*tau)) : nlohmann::json();
        j["t"] = t ? nlohmann::json(t->get_str()) : nlohmann::json();
        return j;
    }
};

/// One persisted hit. `seq` is a deterministic position stamp within the
/// record stream (wall-clock stamps would break the byte-identical
/// determinism contract, so time lives outside the stream).
struct SearchRecord {
    uint64_t seq = 0;
    GaussianInt eta;
    unsigned k = 1;
    GaussianRational index;                // witness: exact I_k(eta)
    std::optional<GaussianInt> tau;        // tau-perfect payload
    std::optional<mpz_class> norm_value;   // norm-perfect payload: ||I_k|| in Z
    std::vector<GaussianInt> partners;     // friendly payload: rest of the group

    bool operator==(const SearchRecord& o) const {
        return seq == o.seq && eta == o.eta && k == o.k && index == o.index && tau == o.tau &&
               norm_value == o.norm_value && partners == o.partners;
    }
};

inline void to_json(nlohmann::json& j, const SearchRecord& r) {
    j = nlohmann::json{{"type", "hit"}, {"seq", r.seq}, {"eta", to_string(r.eta)},
                       {"k", r.k},      {"index", r.index}};
    if (r.tau) j["tau"] = to_string(*r.tau);
    if (r.norm_value) j["t"] = r.norm_value->get_str();
    if (!r.partners.empty()) {
        nlohmann::json p = nlohmann::json::array();
        for (const auto& z : r.partners) p.push_back(to_string(z));
        j["partners"] = p;
    }
}

inline void from_json(const nlohmann::json& j, SearchRecord& r) {
    r.seq = j.at("seq").get<uint64_t>();
    r.eta = parse_gaussian(j.at("eta").get<std::string>());
    r.k = j.at("k").get<unsigned>();
    r.index = j.at("index").get<GaussianRational>();
    r.tau.reset();
    r.norm_value.reset();
    r.partners.clear();
    if (j.contains("tau")) r.tau = parse_gaussian(j.at("tau").get<std::string>());
    if (j.contains("t")) r.norm_value = mpz_class(j.at("t").get<std::string>(), 10);
    if (j.contains("partners"))
        for (const auto& p : j.at("partners")) r.partners.push_back(parse_gaussian(p.get<std::string>()));
}

struct SearchOutcome {
    std::vector<SearchRecord> records;
    uint64_t scanned = 0;
    mpq_class max_index_norm = 0;  // largest exact ||I_k|| seen over the range
    GaussianInt max_index_arg;     // first eta attaining it, in scan order
    bool critical_inconsistency = false; // k >= 2 perfect hit: contradicts the nonexistence theorem
    bool completed = false;              // false when stopped early by RunOptions
};

struct RunOptions {
    unsigned workers = 1;
    /// Test hook simulating interruption: stop cleanly after writing this
    /// many new block markers (0 = run to completion).
    uint64_t stop_after_blocks = 0;
    std::ostream* live = nullptr; // stream the JSONL lines as they are merged
};

/// Exactly one associate representative per class with norm in [lo, hi],
/// ordered by (norm, im). Count up to N matches sum r2(n)/4.
inline std::vector<GaussianInt> enumerate_canonical(uint64_t lo, uint64_t hi) {
    if (lo < 1 || lo > hi) throw domain_error("enumerate_canonical: requires 1 <= lo <= hi");
    struct P {
        uint64_t norm, im, re;
    };
    std::vector<P> pts;
    for (uint64_t a = 1; a * a <= hi; ++a) {
        const uint64_t a2 = a * a;
        uint64_t bmin = 0;
        if (a2 < lo) {
            const uint64_t d = lo - a2;
            bmin = isqrt_u64(d);
            if (bmin * bmin < d) ++bmin;
        }
        const uint64_t bmax = isqrt_u64(hi - a2);
        for (uint64_t b = bmin; b <= bmax; ++b) pts.push_back({a2 + b * b, b, a});
    }
    std::sort(pts.begin(), pts.end(), [](const P& x, const P& y) {
        if (x.norm != y.norm) return x.norm < y.norm;
        return x.im < y.im;
    });
    std::vector<GaussianInt> out;
    out.reserve(pts.size());
    for (const P& p : pts)
        out.emplace_back(static_cast<long>(p.re), static_cast<long>(p.im));
    return out;
}

namespace detail {

struct BlockData {
    std::vector<SearchRecord> hits; // seq assigned by the merger
    std::vector<std::pair<GaussianInt, GaussianRational>> members; // friendly only
    std::optional<mpq_class> max_norm;
    GaussianInt argmax;
    uint64_t scanned = 0;
};

inline BlockData process_block(const SearchTask& task, uint64_t lo, uint64_t hi) {
    BlockData out;
    for (const GaussianInt& eta : enumerate_canonical(lo, hi)) {
        const GaussianRational idx = abundancy(eta, task.k);
        const mpq_class nq = idx.norm();
        ++out.scanned;
        if (!out.max_norm || nq > *out.max_norm) {
            out.max_norm = nq;
            out.argmax = eta;
        }
        switch (task.kind) {
            case SearchKind::tau_perfect:
                if (idx.is_integral() && idx.num().norm() > 1 &&
                    (!task.tau || idx.num() == *task.tau)) {
                    SearchRecord r;
                    r.eta = eta;
                    r.k = task.k;
                    r.index = idx;
                    r.tau = idx.num();
                    out.hits.push_back(std::move(r));
                }
                break;
            case SearchKind::norm_perfect:
                if (nq.get_den() == 1 && nq > 1 && (!task.t || nq.get_num() == *task.t)) {
                    SearchRecord r;
                    r.eta = eta;
                    r.k = task.k;
                    r.index = idx;
                    r.norm_value = nq.get_num();
                    out.hits.push_back(std::move(r));
                }
                break;
            case SearchKind::friendly:
                out.members.emplace_back(eta, idx);
                break;
        }
    }
    return out;
}

struct LoadedState {
    bool fresh = true;
    uint64_t completed_blocks = 0;
    std::vector<SearchRecord> records;
    std::optional<mpq_class> max_norm;
    GaussianInt argmax;
    uint64_t scanned = 0;
    bool has_summary = false;
    std::streamoff good_bytes = 0; // resume point; trailing partial content is cut here
};

inline nlohmann::json parse_state_line(const std::string& line, size_t lineno) {
    try {
        return nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
        throw state_error("state file: unparsable JSON at line " + std::to_string(lineno));
    }
}

/**
 * Load and validate an existing state file against the task fingerprint.
 * Layout: header, then per block its hit lines followed by one block
 * marker, then an optional summary. Only a torn FINAL line (a crash
 * mid-write) is tolerated; it is dropped at the resume point. Anything
 * else malformed is a hard state_error, never a silent restart.
 */
inline LoadedState load_state(const std::string& path, const SearchTask& task,
                              const std::vector<std::pair<uint64_t, uint64_t>>& blocks) {
    LoadedState st;
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) return st;

    std::vector<std::pair<std::string, std::streamoff>> lines; // text, end offset
    std::string line;
    std::streamoff offset = 0;
    while (std::getline(in, line)) {
        offset += static_cast<std::streamoff>(line.size()) + 1;
        lines.emplace_back(line, offset);
    }
    if (lines.empty()) return st; // empty file: fresh start
    st.fresh = false;

    const nlohmann::json expected = task.fingerprint();
    const nlohmann::json header = parse_state_line(lines[0].first, 1);
    if (header != expected)
        throw state_error("state file: fingerprint does not match the requested task");
    st.good_bytes = lines[0].second;

    std::vector<SearchRecord> pending; // hits of the block currently being read
    uint64_t next_seq = 0;
    for (size_t i = 1; i < lines.size(); ++i) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(lines[i].first);
        } catch (const nlohmann::json::exception&) {
            if (i + 1 == lines.size()) break; // torn final line: drop it
            throw state_error("state file: unparsable JSON at line " + std::to_string(i + 1));
        }
        const std::string type = j.value("type", "");
        if (type == "hit") {
            SearchRecord r = j.get<SearchRecord>();
            if (r.seq != next_seq)
                throw state_error("state file: record sequence is not contiguous");
            ++next_seq;
            pending.push_back(std::move(r));
        } else if (type == "block") {
            if (st.has_summary) throw state_error("state file: block marker after summary");
            if (st.completed_blocks >= blocks.size())
                throw state_error("state file: more block markers than task blocks");
            const auto [lo, hi] = blocks[st.completed_blocks];
            if (j.at("lo").get<uint64_t>() != lo || j.at("hi").get<uint64_t>() != hi)
                throw state_error("state file: block marker out of order");
            st.scanned += j.at("scanned").get<uint64_t>();
            if (!j.at("max_index_norm").is_null()) {
                mpq_class q(j.at("max_index_norm").get<std::string>());
                q.canonicalize();
                if (!st.max_norm || q > *st.max_norm) {
                    st.max_norm = q;
                    st.argmax = parse_gaussian(j.at("argmax").get<std::string>());
                }
            }
            for (auto& r : pending) st.records.push_back(std::move(r));
            pending.clear();
            ++st.completed_blocks;
            st.good_bytes = lines[i].second;
        } else if (type == "summary") {
            if (st.completed_blocks != blocks.size())
                throw state_error("state file: summary before all blocks completed");
            // friendly group records sit between the last block marker and
            // the summary; the summary commits them
            for (auto& r : pending) st.records.push_back(std::move(r));
            pending.clear();
            st.has_summary = true;
            st.good_bytes = lines[i].second;
        } else {
            throw state_error("state file: unknown line type at line " + std::to_string(i + 1));
        }
    }
    return st;
}

} // namespace detail

/**
 * Run a search task, optionally checkpointed to a JSON-lines state file
 * and parallelized over norm blocks. Workers compute independent blocks;
 * a single merger consumes them in ascending block order, so the emitted
 * stream (and the state file) is byte-identical across worker counts and
 * across interrupt/resume cycles.
 */
inline SearchOutcome run_search(const SearchTask& task,
                                const std::optional<std::string>& state_path = std::nullopt,
                                const RunOptions& opt = {}) {
    task.validate();

    std::vector<std::pair<uint64_t, uint64_t>> blocks;
    for (uint64_t lo = task.norm_lo; lo <= task.norm_hi; lo += task.block_size) {
        const uint64_t hi = std::min(task.norm_hi, lo + task.block_size - 1);
        blocks.emplace_back(lo, hi);
        if (hi == task.norm_hi) break;
    }

    detail::LoadedState loaded;
    if (state_path) loaded = detail::load_state(*state_path, task, blocks);

    SearchOutcome outcome;
    outcome.records = loaded.records;
    outcome.scanned = loaded.scanned;
    if (loaded.max_norm) {
        outcome.max_index_norm = *loaded.max_norm;
        outcome.max_index_arg = loaded.argmax;
    }

    // Friendly grouping needs the index of every element in range, which
    // the state file does not carry; re-derive members of completed blocks
    // (cheap at desk scale, and bitwise-identical by determinism).
    std::vector<std::pair<GaussianInt, GaussianRational>> members;
    if (task.kind == SearchKind::friendly)
        for (uint64_t b = 0; b < loaded.completed_blocks; ++b)
            for (auto& m : detail::process_block(task, blocks[b].first, blocks[b].second).members)
                members.push_back(std::move(m));

    const bool already_done = loaded.completed_blocks == blocks.size() && loaded.has_summary;

    std::ofstream state_out;
    auto emit_line = [&](const nlohmann::json& j) {
        const std::string text = j.dump();
        if (state_out.is_open()) {
            state_out << text << '\n';
            state_out.flush();
        }
        if (opt.live) *opt.live << text << '\n';
    };

    if (state_path && !already_done) {
        if (!loaded.fresh) std::filesystem::resize_file(*state_path, loaded.good_bytes);
        state_out.open(*state_path, std::ios::binary | std::ios::app);
        if (!state_out.is_open()) throw state_error("cannot open state file: " + *state_path);
        if (loaded.fresh) emit_line(task.fingerprint());
    }

    uint64_t next_seq = 0;
    for (const auto& r : outcome.records) next_seq = std::max(next_seq, r.seq + 1);

    bool stopped_early = false;
    if (!already_done && loaded.completed_blocks < blocks.size()) {
        const size_t nblocks = blocks.size();
        std::vector<std::optional<detail::BlockData>> slots(nblocks);
        std::mutex mu;
        std::condition_variable cv;
        std::atomic<uint64_t> next_block{loaded.completed_blocks};
        std::atomic<bool> stop{false};

        auto worker = [&] {
            for (;;) {
                if (stop.load(std::memory_order_relaxed)) return;
                const uint64_t j = next_block.fetch_add(1);
                if (j >= nblocks) return;
                detail::BlockData data = detail::process_block(task, blocks[j].first, blocks[j].second);
                {
                    std::lock_guard<std::mutex> lock(mu);
                    slots[j] = std::move(data);
                }
                cv.notify_all();
            }
        };
        const unsigned nworkers = std::max(1u, opt.workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);

        uint64_t markers_written = 0;
        for (uint64_t j = loaded.completed_blocks; j < nblocks; ++j) {
            detail::BlockData data;
            {
                std::unique_lock<std::mutex> lock(mu);
                cv.wait(lock, [&] { return slots[j].has_value(); });
                data = std::move(*slots[j]);
                slots[j].reset();
            }
            for (SearchRecord& r : data.hits) {
                r.seq = next_seq++;
                nlohmann::json hj = r;
                emit_line(hj);
                outcome.records.push_back(std::move(r));
            }
            for (auto& m : data.members) members.push_back(std::move(m));
            outcome.scanned += data.scanned;
            if (data.max_norm &&
                (outcome.max_index_arg.is_zero() || *data.max_norm > outcome.max_index_norm)) {
                outcome.max_index_norm = *data.max_norm;
                outcome.max_index_arg = data.argmax;
            }
            nlohmann::json marker{{"type", "block"},
                                  {"lo", blocks[j].first},
                                  {"hi", blocks[j].second},
                                  {"scanned", data.scanned}};
            marker["max_index_norm"] =
                data.max_norm ? nlohmann::json(data.max_norm->get_str()) : nlohmann::json();
            marker["argmax"] =
                data.max_norm ? nlohmann::json(to_string(data.argmax)) : nlohmann::json();
            emit_line(marker);
            ++markers_written;
            if (opt.stop_after_blocks && markers_written >= opt.stop_after_blocks &&
                j + 1 < nblocks) {
                stop.store(true);
                stopped_early = true;
                break;
            }
        }
        stop.store(true);
        for (auto& th : pool) th.join();
    }

    if (stopped_early) {
        outcome.completed = false;
        return outcome;
    }

    if (task.kind == SearchKind::friendly && !already_done) {
        // Group by exact canonical index, emit groups of size >= 2 in
        // first-seen order. Associates never collide: enumeration is
        // canonical-only.
        std::map<GaussianRational, size_t> group_of;
        std::vector<std::vector<GaussianInt>> grouped;
        std::vector<GaussianRational> group_index;
        for (const auto& [eta, idx] : members) {
            auto it = group_of.find(idx);
            if (it == group_of.end()) {
                group_of.emplace(idx, grouped.size());
                grouped.push_back({eta});
                group_index.push_back(idx);
            } else {
                grouped[it->second].push_back(eta);
            }
        }
        for (size_t g = 0; g < grouped.size(); ++g) {
            if (grouped[g].size() < 2) continue;
            SearchRecord r;
            r.seq = next_seq++;
            r.eta = grouped[g].front();
            r.k = task.k;
            r.index = group_index[g];
            r.partners.assign(grouped[g].begin() + 1, grouped[g].end());
            nlohmann::json hj = r;
            emit_line(hj);
            outcome.records.push_back(std::move(r));
        }
    }

    outcome.critical_inconsistency =
        task.kind != SearchKind::friendly && task.k >= 2 && !outcome.records.empty();
    outcome.completed = true;

    if (!already_done) {
        nlohmann::json summary{{"type", "summary"},
                               {"records", outcome.records.size()},
                               {"scanned", outcome.scanned},
                               {"critical_inconsistency", outcome.critical_inconsistency}};
        summary["max_index_norm"] = outcome.max_index_arg.is_zero()
                                        ? nlohmann::json()
                                        : nlohmann::json(outcome.max_index_norm.get_str());
        summary["argmax"] = outcome.max_index_arg.is_zero()
                                ? nlohmann::json()
                                : nlohmann::json(to_string(outcome.max_index_arg));
        emit_line(summary);
    }
    return outcome;
}

inline SearchOutcome search_tau_perfect(const SearchTask& task,
                                        const std::optional<std::string>& state = std::nullopt,
                                        const RunOptions& opt = {}) {
    if (task.kind != SearchKind::tau_perfect)
        throw domain_error("search_tau_perfect: task kind mismatch");
    return run_search(task, state, opt);
}

inline SearchOutcome search_norm_perfect(const SearchTask& task,
                                         const std::optional<std::string>& state = std::nullopt,
                                         const RunOptions& opt = {}) {
    if (task.kind != SearchKind::norm_perfect)
        throw domain_error("search_norm_perfect: task kind mismatch");
    return run_search(task, state, opt);
}

inline SearchOutcome search_friendly(const SearchTask& task,
                                     const std::optional<std::string>& state = std::nullopt,
                                     const RunOptions& opt = {}) {
    if (task.kind != SearchKind::friendly)
        throw domain_error("search_friendly: task kind mismatch");
    return run_search(task, state, opt);
}

} // namespace gaussint
