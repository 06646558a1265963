#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaussint/search.hpp"

using namespace gaussint;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gaussint-test-" + std::to_string(Catch::rngSeed()) + "-" +
                std::to_string(reinterpret_cast<uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

uint64_t lattice_class_count(uint64_t limit) {
    // #nonzero lattice points with norm <= limit, divided by 4
    uint64_t points = 0;
    for (long a = -static_cast<long>(isqrt_u64(limit)); a <= static_cast<long>(isqrt_u64(limit)); ++a)
        for (long b = -static_cast<long>(isqrt_u64(limit)); b <= static_cast<long>(isqrt_u64(limit)); ++b)
            if ((a || b) && static_cast<uint64_t>(a * a + b * b) <= limit) ++points;
    return points / 4;
}

} // namespace

TEST_CASE("enumerate_canonical") {
    SECTION("examples") {
        CHECK(enumerate_canonical(1, 2) ==
              std::vector<GaussianInt>{GaussianInt(1, 0), GaussianInt(1, 1)});
        CHECK(enumerate_canonical(5, 5) ==
              std::vector<GaussianInt>{GaussianInt(2, 1), GaussianInt(1, 2)});
        CHECK_THROWS_AS(enumerate_canonical(0, 5), domain_error);
        CHECK_THROWS_AS(enumerate_canonical(7, 3), domain_error);
    }

    SECTION("exactly one representative per associate class, ordered") {
        const auto vals = enumerate_canonical(1, 400);
        CHECK(vals.size() == lattice_class_count(400));
        mpz_class prev_norm = 0;
        for (const GaussianInt& z : vals) {
            CHECK(is_canonical(z));
            CHECK(z.norm() >= prev_norm);
            prev_norm = z.norm();
        }
        for (uint64_t limit : {1, 10, 50, 200})
            CHECK(enumerate_canonical(1, limit).size() == lattice_class_count(limit));
    }
}

TEST_CASE("task validation") {
    SearchTask t;
    t.kind = SearchKind::norm_perfect;
    t.k = 0;
    t.norm_hi = 10;
    CHECK_THROWS_AS(t.validate(), domain_error);
    t.k = 1;
    t.norm_lo = 20;
    CHECK_THROWS_AS(t.validate(), domain_error);
    t.norm_lo = 1;
    t.t = mpz_class(1);
    CHECK_THROWS_AS(t.validate(), domain_error); // Definition constraint: t > 1
    t.t = mpz_class(2);
    CHECK_NOTHROW(t.validate());
    t.kind = SearchKind::friendly;
    CHECK_THROWS_AS(t.validate(), domain_error); // t filter on the wrong kind
    SearchTask tau_task;
    tau_task.kind = SearchKind::tau_perfect;
    tau_task.norm_hi = 10;
    tau_task.tau = GaussianInt(0, 1); // ||tau|| = 1 violates ||tau|| > 1
    CHECK_THROWS_AS(tau_task.validate(), domain_error);
}

TEST_CASE("tau-perfect search at k=1") {
    SearchTask task;
    task.kind = SearchKind::tau_perfect;
    task.k = 1;
    task.norm_hi = 200;
    const SearchOutcome out = search_tau_perfect(task);
    REQUIRE(out.records.size() == 3);
    CHECK(out.records[0].eta == GaussianInt(1, 3));
    CHECK(out.records[0].tau == GaussianInt(2, -1));
    CHECK(out.records[1].eta == GaussianInt(6, 2));
    CHECK(out.records[1].tau == GaussianInt(1, -2));
    CHECK(out.records[2].eta == GaussianInt(5, 5));
    CHECK(out.records[2].tau == GaussianInt(2, -2));
    CHECK_FALSE(out.critical_inconsistency);
    for (const SearchRecord& r : out.records) {
        CHECK(abundancy(r.eta, 1) == r.index); // every record re-verifiable
        CHECK(r.index.is_integral());
        CHECK(r.index.num().norm() > 1);
    }

    SECTION("tau filter") {
        task.tau = GaussianInt(2, -1);
        const SearchOutcome filtered = search_tau_perfect(task);
        REQUIRE(filtered.records.size() == 1);
        CHECK(filtered.records[0].eta == GaussianInt(1, 3));
    }
}

TEST_CASE("norm-perfect search at k=1") {
    SearchTask task;
    task.kind = SearchKind::norm_perfect;
    task.k = 1;
    task.norm_hi = 10;
    task.t = mpz_class(2);
    const SearchOutcome out = search_norm_perfect(task);
    REQUIRE(out.records.size() == 1);
    CHECK(out.records[0].eta == GaussianInt(2, 1));
    CHECK(out.records[0].norm_value == mpz_class(2));
    CHECK(abundancy_norm(GaussianInt(2, 1), 1) == 2);
    CHECK_FALSE(out.critical_inconsistency);

    SECTION("without the t filter, every integral index above 1 is a hit") {
        task.t.reset();
        task.norm_hi = 20;
        const SearchOutcome all = search_norm_perfect(task);
        REQUIRE(all.records.size() == 3);
        CHECK(all.records[0].eta == GaussianInt(2, 1)); // ||I|| = 2
        CHECK(all.records[1].eta == GaussianInt(3, 1)); // ||I|| = 4
        CHECK(all.records[2].eta == GaussianInt(1, 3)); // ||I|| = 5
        CHECK(all.records[1].norm_value == mpz_class(4));
        CHECK(all.records[2].norm_value == mpz_class(5));
    }
}

TEST_CASE("friendly search groups by exact index") {
    SearchTask task;
    task.kind = SearchKind::friendly;
    task.k = 1;
    task.norm_hi = 1200;
    const SearchOutcome out = search_friendly(task);
    REQUIRE(out.records.size() == 3);

    CHECK(out.records[0].eta == GaussianInt(2, 2));
    CHECK(out.records[0].partners == std::vector<GaussianInt>{GaussianInt(24, 24)});
    CHECK(out.records[0].index == GaussianRational(GaussianInt(5, -5), 4));

    CHECK(out.records[1].eta == GaussianInt(5, 5));
    CHECK(out.records[1].partners == std::vector<GaussianInt>{GaussianInt(12, 18)});
    CHECK(out.records[1].index == GaussianRational(GaussianInt(2, -2), 1));

    CHECK(out.records[2].eta == GaussianInt(20, 4));
    CHECK(out.records[2].partners == std::vector<GaussianInt>{GaussianInt(24, 8)});

    SECTION("group contents re-verified pairwise") {
        for (const SearchRecord& r : out.records)
            for (const GaussianInt& p : r.partners) {
                const FriendlyResult fr = are_friendly(r.eta, p, task.k);
                CHECK(fr.friendly);
                CHECK_FALSE(fr.associates);
            }
    }
}

TEST_CASE("checkpointing") {
    TempDir dir;
    SearchTask task;
    task.kind = SearchKind::norm_perfect;
    task.k = 1;
    task.norm_hi = 2000;
    task.block_size = 500;

    SECTION("interrupt and resume reproduce the uninterrupted stream") {
        const std::string full = dir.file("full.jsonl"), resumed = dir.file("resumed.jsonl");
        const SearchOutcome a = run_search(task, full);
        RunOptions stop;
        stop.stop_after_blocks = 1;
        const SearchOutcome partial = run_search(task, resumed, stop);
        CHECK_FALSE(partial.completed);
        const SearchOutcome b = run_search(task, resumed);
        CHECK(b.completed);
        CHECK(a.records == b.records);
        CHECK(a.scanned == b.scanned);
        CHECK(a.max_index_norm == b.max_index_norm);
        REQUIRE_FALSE(slurp(full).empty());
        CHECK(slurp(full) == slurp(resumed));
    }

    SECTION("re-running a completed state is a no-op") {
        const std::string path = dir.file("done.jsonl");
        const SearchOutcome a = run_search(task, path);
        const std::string bytes = slurp(path);
        const SearchOutcome b = run_search(task, path);
        CHECK(slurp(path) == bytes);
        CHECK(a.records == b.records);
        CHECK(a.scanned == b.scanned);
    }

    SECTION("fingerprint mismatch is a load error") {
        const std::string path = dir.file("state.jsonl");
        run_search(task, path, RunOptions{.workers = 1, .stop_after_blocks = 1});
        SearchTask other = task;
        other.k = 2;
        CHECK_THROWS_AS(run_search(other, path), state_error);
    }

    SECTION("corrupt interior line is a load error, not a silent restart") {
        const std::string path = dir.file("state.jsonl");
        run_search(task, path, RunOptions{.workers = 1, .stop_after_blocks = 2});
        std::string bytes = slurp(path);
        const auto first_nl = bytes.find('\n');
        bytes.insert(first_nl + 1, "{\"type\":\"hit\",garbage\n");
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_AS(run_search(task, path), state_error);
    }

    SECTION("a torn final line is dropped at resume") {
        const std::string path = dir.file("state.jsonl");
        run_search(task, path, RunOptions{.workers = 1, .stop_after_blocks = 2});
        {
            std::ofstream app(path, std::ios::binary | std::ios::app);
            app << "{\"type\":\"blo"; // crash mid-write
        }
        const SearchOutcome resumed = run_search(task, path);
        const std::string ref = dir.file("ref.jsonl");
        const SearchOutcome fresh = run_search(task, ref);
        CHECK(resumed.records == fresh.records);
        CHECK(slurp(path) == slurp(ref));
    }

    SECTION("empty state file is a fresh start") {
        const std::string path = dir.file("empty.jsonl");
        std::ofstream(path, std::ios::binary).flush();
        const SearchOutcome out = run_search(task, path);
        CHECK(out.completed);
        REQUIRE_FALSE(slurp(path).empty());
    }
}

TEST_CASE("worker parallelism does not change the stream") {
    TempDir dir;
    SearchTask task;
    task.kind = SearchKind::friendly;
    task.k = 1;
    task.norm_hi = 1500;
    task.block_size = 100;

    const std::string seq_path = dir.file("seq.jsonl"), par_path = dir.file("par.jsonl");
    const SearchOutcome seq = run_search(task, seq_path, RunOptions{.workers = 1});
    const SearchOutcome par = run_search(task, par_path, RunOptions{.workers = 4});
    CHECK(seq.records == par.records);
    CHECK(seq.scanned == par.scanned);
    CHECK(slurp(seq_path) == slurp(par_path));
}

TEST_CASE("live stream mirrors the state file") {
    TempDir dir;
    SearchTask task;
    task.kind = SearchKind::norm_perfect;
    task.k = 1;
    task.norm_hi = 100;
    std::ostringstream live;
    RunOptions opt;
    opt.live = &live;
    const std::string path = dir.file("state.jsonl");
    run_search(task, path, opt);
    CHECK(live.str() == slurp(path));
}
