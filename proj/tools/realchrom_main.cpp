// Command-line front end; everything goes through the C API of the shared
// library.  Payload bytes go to stdout (or --out), diagnostics to stderr.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "realchrom/realchrom.h"

namespace {

struct Context {
    rc_context* c = rc_context_new();
    ~Context() { rc_context_free(c); }
    Context(const Context&) = delete;
    Context& operator=(const Context&) = delete;
    Context() = default;
};

int statusExit(rc_status st) {
    switch (st) {
        case RC_OK:
            return 0;
        case RC_EINVAL:
        case RC_EPARSE:
        case RC_ENOTINTHEORY:
        case RC_ERESOURCE:
            return 2;
        default:
            return 3;
    }
}

// Move an API string result into a std::string.
std::string takeString(char* s) {
    std::string out = s ? s : "";
    rc_string_free(s);
    return out;
}

int deliver(const std::string& payload, const std::string& outPath) {
    if (outPath.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        std::fflush(stdout);
        return 0;
    }
    std::ofstream f(outPath, std::ios::binary | std::ios::trunc);
    if (!f) {
        std::cerr << "realchrom: cannot open " << outPath << " for writing\n";
        return 3;
    }
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    f.flush();
    if (!f) {
        std::cerr << "realchrom: error writing " << outPath << "\n";
        return 3;
    }
    return 0;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cacheFile(const std::string& dir, const std::string& key) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
    return dir + "/rc-" + buf + ".cache";
}

constexpr const char* kCacheMagic = "realchrom-cache 1";

bool readCache(const std::string& path, const std::string& key, std::string* payload,
               int* exitCode) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return false;  // plain miss
    std::string magic, storedKey, ecLine, countLine;
    if (!std::getline(f, magic) || magic != kCacheMagic) {
        std::cerr << "realchrom: ignoring corrupt cache entry " << path << "\n";
        return false;
    }
    if (!std::getline(f, storedKey)) {
        std::cerr << "realchrom: ignoring corrupt cache entry " << path << "\n";
        return false;
    }
    if (storedKey != key) return false;  // hash collision or stale: recompute
    if (!std::getline(f, ecLine) || !std::getline(f, countLine)) {
        std::cerr << "realchrom: ignoring corrupt cache entry " << path << "\n";
        return false;
    }
    long long ec = 0, count = 0;
    try {
        std::size_t p1 = 0, p2 = 0;
        ec = std::stoll(ecLine, &p1);
        count = std::stoll(countLine, &p2);
        if (p1 != ecLine.size() || p2 != countLine.size() || count < 0) throw std::exception();
    } catch (...) {
        std::cerr << "realchrom: ignoring corrupt cache entry " << path << "\n";
        return false;
    }
    payload->resize(static_cast<std::size_t>(count));
    f.read(payload->data(), count);
    if (f.gcount() != count) {
        std::cerr << "realchrom: ignoring corrupt cache entry " << path << "\n";
        return false;
    }
    *exitCode = static_cast<int>(ec);
    return true;
}

void writeCache(const std::string& path, const std::string& key, int exitCode,
                const std::string& payload) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        std::cerr << "realchrom: cannot write cache entry " << path << "\n";
        return;
    }
    f << kCacheMagic << "\n" << key << "\n" << exitCode << "\n" << payload.size() << "\n";
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!f) std::cerr << "realchrom: error writing cache entry " << path << "\n";
}

// The cache is advisory: hits replay stored bytes and exit code, misses and
// corruption fall back to recomputation.  compute fills the payload and
// returns the exit code; codes > 1 mean the command failed and nothing is
// cached or delivered.
template <typename Fn>
int runCached(const std::string& cacheDir, const std::string& key, const std::string& outPath,
              Fn&& compute) {
    if (!cacheDir.empty()) {
        std::string payload;
        int ec = 0;
        if (readCache(cacheFile(cacheDir, key), key, &payload, &ec)) {
            int d = deliver(payload, outPath);
            return d != 0 ? d : ec;
        }
    }
    std::string payload;
    int ec = compute(&payload);
    if (ec > 1) return ec;
    if (!cacheDir.empty()) writeCache(cacheFile(cacheDir, key), key, ec, payload);
    int d = deliver(payload, outPath);
    return d != 0 ? d : ec;
}

int apiError(const Context& ctx, rc_status st) {
    std::cerr << "realchrom: " << rc_last_error(ctx.c) << "\n";
    return statusExit(st);
}

bool parseWindow(const std::string& w, long long* K, long long* L) {
    try {
        const auto comma = w.find(',');
        std::size_t pos = 0;
        if (comma == std::string::npos) {
            *K = std::stoll(w, &pos);
            if (pos != w.size()) return false;
            *L = *K;
        } else {
            const std::string a = w.substr(0, comma), b = w.substr(comma + 1);
            *K = std::stoll(a, &pos);
            if (pos != a.size()) return false;
            *L = std::stoll(b, &pos);
            if (pos != b.size()) return false;
        }
    } catch (...) {
        return false;
    }
    return *K >= 1 && *L >= 1;
}

int usageError(const std::string& msg) {
    std::cerr << "realchrom: " << msg << "\n";
    return 2;
}

std::string cacheDirFor(const std::string& flag) {
    if (!flag.empty()) return flag;
    const char* env = std::getenv("REAL_CHROM_CACHE");
    return env ? env : "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact RO(Z/2)-graded coefficient groups of Real Johnson-Wilson theories and their "
        "Tate-diagram companions"};
    app.require_subcommand(1);
    const std::string version = rc_version();
    app.set_version_flag("--version", version);

    const std::vector<std::string> theories = {"bpr",      "bprn",     "tate",
                                               "borelcoh", "borelhom", "geometric"};
    const std::vector<std::string> formats = {"text", "csv", "json"};
    const std::vector<std::string> suites = {"tate-closed-form", "borel-closed-form",
                                             "geometric",        "les",
                                             "ko",               "corollary-diff",
                                             "gap"};

    // group
    auto* cmdGroup = app.add_subcommand("group", "Group and generators at one bidegree");
    std::string gTheory, gFormat = "text", gOut;
    int gN = 1;
    long long gK = 0, gL = 0;
    cmdGroup->add_option("--theory", gTheory, "Theory name")
        ->required()
        ->check(CLI::IsMember(theories));
    cmdGroup->add_option("--n", gN, "Truncation height");
    cmdGroup->add_option("--k", gK, "Integer part of the bidegree")->required();
    cmdGroup->add_option("--l", gL, "Twist (alpha part) of the bidegree")->required();
    cmdGroup->add_option("--format", gFormat, "Output format")->check(CLI::IsMember(formats));
    cmdGroup->add_option("--out", gOut, "Write output to a file instead of stdout");

    // table
    auto* cmdTable = app.add_subcommand("table", "Rectangular table of groups");
    std::string tTheory, tFormat = "text", tOut, tWindow, tCacheDir, tMode = "theorem";
    int tN = 1;
    long long tL = 0, tKmin = 0, tKmax = 0, tLmin = 0, tLmax = 0;
    bool tTwisted = false;
    cmdTable->add_option("--theory", tTheory, "Theory name")
        ->required()
        ->check(CLI::IsMember(theories));
    cmdTable->add_option("--n", tN, "Truncation height");
    cmdTable->add_option("--window", tWindow, "Symmetric window K or K,L (|k|<=K, |l|<=L)");
    cmdTable->add_option("--l", tL, "Single twist line");
    cmdTable->add_option("--kmin", tKmin, "Lower k bound");
    cmdTable->add_option("--kmax", tKmax, "Upper k bound");
    cmdTable->add_option("--lmin", tLmin, "Lower twist bound");
    cmdTable->add_option("--lmax", tLmax, "Upper twist bound");
    cmdTable->add_option("--mode", tMode,
                         "theorem: plain table; corollary: congruence-indexed view of one "
                         "twist line (bprn only, needs --l)")
        ->check(CLI::IsMember({"theorem", "corollary"}));
    cmdTable->add_option("--format", tFormat, "Output format")->check(CLI::IsMember(formats));
    cmdTable->add_flag("--twisted-fixed-points", tTwisted,
                       "Label text rows as dimension k of the twist-l fixed points");
    cmdTable->add_option("--out", tOut, "Write output to a file instead of stdout");
    cmdTable->add_option("--cache-dir", tCacheDir,
                         "Cache directory (REAL_CHROM_CACHE is also honored)");

    // verify
    auto* cmdVerify = app.add_subcommand("verify", "Run a named cross-check suite");
    std::string vSuite, vFormat = "text", vOut, vWindow = "16", vCacheDir;
    int vN = 1;
    cmdVerify->add_option("--suite", vSuite, "Suite name")
        ->required()
        ->check(CLI::IsMember(suites));
    cmdVerify->add_option("--n", vN, "Truncation height (the ko suite is pinned at height 1)");
    cmdVerify->add_option("--window", vWindow, "Window K or K,L");
    cmdVerify->add_option("--format", vFormat, "Accepted for symmetry; suites render text")
        ->check(CLI::IsMember(formats));
    cmdVerify->add_option("--out", vOut, "Write the report to a file instead of stdout");
    cmdVerify->add_option("--cache-dir", vCacheDir,
                          "Cache directory (REAL_CHROM_CACHE is also honored)");

    // ssdump
    auto* cmdDump = app.add_subcommand("ssdump", "Dump a spectral-sequence page");
    std::string dKind, dFormat = "text", dOut, dWindow = "16", dCacheDir;
    int dN = 1, dPage = -1;
    cmdDump->add_option("--kind", dKind, "Spectral sequence")
        ->required()
        ->check(CLI::IsMember({"tate", "borel", "geometric", "tower"}));
    cmdDump->add_option("--n", dN, "Truncation height");
    cmdDump->add_option("--page", dPage, "Page to stop at; < 1 runs to the last page");
    cmdDump->add_option("--window", dWindow, "Window K or K,L");
    cmdDump->add_option("--format", dFormat, "Output format")->check(CLI::IsMember(formats));
    cmdDump->add_option("--out", dOut, "Write output to a file instead of stdout");
    cmdDump->add_option("--cache-dir", dCacheDir,
                        "Cache directory (REAL_CHROM_CACHE is also honored)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Context ctx;
    if (!ctx.c) {
        std::cerr << "realchrom: out of memory\n";
        return 3;
    }

    if (app.got_subcommand(cmdGroup)) {
        char* out = nullptr;
        rc_status st = rc_group(ctx.c, gTheory.c_str(), gN, gK, gL, gFormat.c_str(), &out);
        if (st != RC_OK) return apiError(ctx, st);
        return deliver(takeString(out), gOut);
    }

    if (app.got_subcommand(cmdTable)) {
        long long K = 0, L = 0;
        long long kmin = 0, kmax = 0, lmin = 0, lmax = 0;
        const bool winGiven = cmdTable->count("--window") > 0;
        if (winGiven) {
            if (!parseWindow(tWindow, &K, &L)) return usageError("bad --window (use K or K,L)");
            kmin = -K;
            kmax = K;
            lmin = -L;
            lmax = L;
        }
        if (cmdTable->count("--l")) lmin = lmax = tL;
        if (cmdTable->count("--kmin")) kmin = tKmin;
        if (cmdTable->count("--kmax")) kmax = tKmax;
        if (cmdTable->count("--lmin")) lmin = tLmin;
        if (cmdTable->count("--lmax")) lmax = tLmax;
        const bool haveK =
            winGiven || (cmdTable->count("--kmin") && cmdTable->count("--kmax"));
        const bool haveL = winGiven || cmdTable->count("--l") ||
                           (cmdTable->count("--lmin") && cmdTable->count("--lmax"));
        if (!haveK || !haveL)
            return usageError("table needs a window: --window, or --kmin/--kmax with --l "
                              "(or --lmin/--lmax)");

        const std::string cacheDir = cacheDirFor(tCacheDir);
        if (tMode == "corollary") {
            if (tTheory != "bprn" || !cmdTable->count("--l"))
                return usageError("--mode corollary needs --theory bprn and a --l twist line");
            const std::string key = "v=" + version + ";cmd=corollary;n=" + std::to_string(tN) +
                                    ";l=" + std::to_string(tL) + ";kmin=" +
                                    std::to_string(kmin) + ";kmax=" + std::to_string(kmax) +
                                    ";format=" + tFormat;
            return runCached(cacheDir, key, tOut, [&](std::string* payload) {
                char* out = nullptr;
                rc_status st = rc_corollary(ctx.c, tN, tL, kmin, kmax, "corollary",
                                            tFormat.c_str(), &out);
                if (st != RC_OK) return apiError(ctx, st);
                *payload = takeString(out);
                return 0;
            });
        }
        const std::string key = "v=" + version + ";cmd=table;theory=" + tTheory +
                                ";n=" + std::to_string(tN) + ";kmin=" + std::to_string(kmin) +
                                ";kmax=" + std::to_string(kmax) + ";lmin=" +
                                std::to_string(lmin) + ";lmax=" + std::to_string(lmax) +
                                ";format=" + tFormat + ";twisted=" + (tTwisted ? "1" : "0");
        return runCached(cacheDir, key, tOut, [&](std::string* payload) {
            char* out = nullptr;
            rc_status st = rc_table(ctx.c, tTheory.c_str(), tN, kmin, kmax, lmin, lmax,
                                    tFormat.c_str(), tTwisted ? 1 : 0, &out);
            if (st != RC_OK) return apiError(ctx, st);
            *payload = takeString(out);
            return 0;
        });
    }

    if (app.got_subcommand(cmdVerify)) {
        long long K = 0, L = 0;
        if (!parseWindow(vWindow, &K, &L)) return usageError("bad --window (use K or K,L)");
        const std::string cacheDir = cacheDirFor(vCacheDir);
        const std::string key = "v=" + version + ";cmd=verify;suite=" + vSuite +
                                ";n=" + std::to_string(vN) + ";K=" + std::to_string(K) +
                                ";L=" + std::to_string(L) + ";format=" + vFormat;
        return runCached(cacheDir, key, vOut, [&](std::string* payload) {
            char* out = nullptr;
            int64_t failures = 0;
            rc_status st = rc_verify(ctx.c, vSuite.c_str(), vN, K, L, vFormat.c_str(),
                                     &failures, &out);
            if (st != RC_OK) return apiError(ctx, st);
            *payload = takeString(out);
            if (failures > 0) {
                std::cerr << "realchrom: suite " << vSuite << " reports " << failures
                          << " unexpected failure(s)\n";
                return 1;
            }
            return 0;
        });
    }

    if (app.got_subcommand(cmdDump)) {
        long long K = 0, L = 0;
        if (!parseWindow(dWindow, &K, &L)) return usageError("bad --window (use K or K,L)");
        const std::string cacheDir = cacheDirFor(dCacheDir);
        const std::string key = "v=" + version + ";cmd=ssdump;kind=" + dKind +
                                ";n=" + std::to_string(dN) + ";page=" + std::to_string(dPage) +
                                ";K=" + std::to_string(K) + ";L=" + std::to_string(L) +
                                ";format=" + dFormat;
        return runCached(cacheDir, key, dOut, [&](std::string* payload) {
            char* out = nullptr;
            rc_status st =
                rc_ssdump(ctx.c, dKind.c_str(), dN, dPage, K, L, dFormat.c_str(), &out);
            if (st != RC_OK) return apiError(ctx, st);
            *payload = takeString(out);
            return 0;
        });
    }

    return usageError("no command");
}
