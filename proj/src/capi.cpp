#include "realchrom/realchrom.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "realchrom/diagram.hpp"
#include "realchrom/groups.hpp"
#include "realchrom/ss.hpp"
#include "realchrom/theory.hpp"
#include "realchrom/verify.hpp"
#include "realchrom/version.hpp"

using namespace realchrom;

struct rc_context {
    std::string lastError;
};

namespace {

char* dupString(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

rc_status fail(rc_context* ctx, rc_status st, const std::string& msg) {
    if (ctx) ctx->lastError = msg;
    return st;
}

template <typename Fn>
rc_status guarded(rc_context* ctx, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        return fail(ctx, RC_EPARSE, e.what());
    } catch (const NotInTheoryError& e) {
        return fail(ctx, RC_ENOTINTHEORY, e.what());
    } catch (const ResourceLimitError& e) {
        return fail(ctx, RC_ERESOURCE, e.what());
    } catch (const std::overflow_error& e) {
        return fail(ctx, RC_EINVAL, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(ctx, RC_EINVAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ctx, RC_EINTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ctx, RC_EINTERNAL, e.what());
    } catch (...) {
        return fail(ctx, RC_EINTERNAL, "unknown error");
    }
}

std::optional<OutputFormat> parseFormat(const char* f) {
    if (!f) return std::nullopt;
    const std::string s = f;
    if (s == "text") return OutputFormat::Text;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    return std::nullopt;
}

rc_status emit(rc_context* ctx, char** out, const std::string& text) {
    char* p = dupString(text);
    if (!p) return fail(ctx, RC_EINTERNAL, "out of memory");
    *out = p;
    return RC_OK;
}

Monomial dumpName(const CellRecord& rec) {
    return rec.repVal > 0 ? Monomial::v(0, rec.repVal) * rec.name : rec.name;
}

std::string renderDump(const PageWindow& w, int requestedPage, OutputFormat format) {
    const auto sur = w.survivors();
    const int page = w.page();
    const bool showRules = !w.exhausted() && page == requestedPage;

    std::ostringstream out;
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [b, cells] : sur)
            for (const auto& c : cells) {
                nlohmann::ordered_json j;
                j["page"] = page;
                j["k"] = b.k;
                j["l"] = b.l;
                j["filtration"] = c.filtration;
                j["order"] = c.order == GenOrder::Free ? "Z(2)" : "Z/2";
                j["monomial"] = dumpName(c).text();
                arr.push_back(std::move(j));
            }
        out << arr.dump(2) << "\n";
        return out.str();
    }
    if (format == OutputFormat::Csv) {
        out << "page,k,l,filtration,order,monomial\n";
        for (const auto& [b, cells] : sur)
            for (const auto& c : cells)
                out << page << "," << b.k << "," << b.l << "," << c.filtration << ","
                    << (c.order == GenOrder::Free ? "Z(2)" : "Z/2") << "," << dumpName(c).text()
                    << "\n";
        return out.str();
    }
    out << "r k l filtration order monomial\n";
    for (const auto& [b, cells] : sur)
        for (const auto& c : cells)
            out << page << " " << b.k << " " << b.l << " " << c.filtration << " "
                << (c.order == GenOrder::Free ? "Z(2)" : "Z/2") << " " << dumpName(c).text()
                << "\n";
    if (showRules) {
        for (const auto& r : w.currentRules())
            out << "d" << page << ": " << r.source.text() << " -> " << r.coefficient << "*"
                << r.target.text() << "  at " << r.sourceDeg.text() << "\n";
    }
    return out.str();
}

}  // namespace

extern "C" {

const char* rc_version(void) { return REALCHROM_VERSION; }

rc_context* rc_context_new(void) { return new (std::nothrow) rc_context; }

void rc_context_free(rc_context* ctx) { delete ctx; }

const char* rc_last_error(const rc_context* ctx) { return ctx ? ctx->lastError.c_str() : ""; }

void rc_string_free(char* s) { std::free(s); }

rc_status rc_monomial_canonical(rc_context* ctx, const char* word, char** out) {
    if (!word || !out) return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] { return emit(ctx, out, Monomial::parse(word).text()); });
}

rc_status rc_monomial_dimension(rc_context* ctx, const char* word, int64_t* k, int64_t* l) {
    if (!word || !k || !l) return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] {
        Bidegree b = Monomial::parse(word).dimension();
        *k = b.k;
        *l = b.l;
        return RC_OK;
    });
}

rc_status rc_monomial_weight(rc_context* ctx, const char* word, int64_t* weight) {
    if (!word || !weight) return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] {
        *weight = Monomial::parse(word).milnorWeight();
        return RC_OK;
    });
}

rc_status rc_normal_form(rc_context* ctx, const char* theory, int n, const char* word,
                         int* is_zero, int64_t* valuation, char** out) {
    if (!theory || !word || !is_zero || !valuation || !out)
        return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] {
        auto th = TheoryId::parse(theory, n);
        if (!th) return fail(ctx, RC_EINVAL, std::string("unknown theory: ") + theory);
        Reduction r = normalForm(*th, Monomial::parse(word));
        *is_zero = r.zero ? 1 : 0;
        *valuation = r.valuation;
        return emit(ctx, out, r.zero ? "0" : r.basis.text());
    });
}

rc_status rc_group(rc_context* ctx, const char* theory, int n, int64_t k, int64_t l,
                   const char* format, char** out) {
    if (!theory || !out) return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] {
        auto th = TheoryId::parse(theory, n);
        auto fmt = parseFormat(format);
        if (!th) return fail(ctx, RC_EINVAL, std::string("unknown theory: ") + theory);
        if (!fmt) return fail(ctx, RC_EINVAL, "unknown format");
        Bidegree b{k, l};
        return emit(ctx, out, renderGroup(*th, b, groupAt(*th, b), *fmt));
    });
}

rc_status rc_table(rc_context* ctx, const char* theory, int n, int64_t kmin, int64_t kmax,
                   int64_t lmin, int64_t lmax, const char* format, int twisted_labels,
                   char** out) {
    if (!theory || !out) return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] {
        auto th = TheoryId::parse(theory, n);
        auto fmt = parseFormat(format);
        if (!th) return fail(ctx, RC_EINVAL, std::string("unknown theory: ") + theory);
        if (!fmt) return fail(ctx, RC_EINVAL, "unknown format");
        // an empty window intersection renders as a header-only table
        auto rows = makeTable(*th, kmin, kmax, lmin, lmax);
        return emit(ctx, out, renderTable(*th, rows, *fmt, twisted_labels != 0));
    });
}

rc_status rc_corollary(rc_context* ctx, int n, int64_t l, int64_t kmin, int64_t kmax,
                       const char* mode, const char* format, char** out) {
    if (!mode || !out) return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] {
        auto fmt = parseFormat(format);
        if (!fmt) return fail(ctx, RC_EINVAL, "unknown format");
        const std::string m = mode;
        if (m != "theorem" && m != "corollary") return fail(ctx, RC_EINVAL, "unknown mode");
        auto entries = corollaryView({TheoryKind::Bprn, n}, l, kmin, kmax,
                                     m == "theorem" ? Mode::Theorem : Mode::Corollary);
        auto tagText = [](SlotTag t) {
            return t == SlotTag::Free ? "Z(2)" : t == SlotTag::Two ? "Z/2" : "dead";
        };
        std::ostringstream os;
        if (*fmt == OutputFormat::Json) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& e : entries) {
                nlohmann::ordered_json j;
                j["word"] = e.word.text();
                j["k"] = e.dimension.k;
                j["l"] = e.dimension.l;
                j["tag"] = tagText(e.tag);
                j["class"] = e.cls;
                j["second_summand"] = e.secondSummand;
                arr.push_back(std::move(j));
            }
            os << arr.dump(2) << "\n";
        } else if (*fmt == OutputFormat::Csv) {
            os << "word,k,l,tag,class,second_summand\n";
            for (const auto& e : entries)
                os << e.word.text() << "," << e.dimension.k << "," << e.dimension.l << ","
                   << tagText(e.tag) << "," << e.cls << "," << (e.secondSummand ? 1 : 0)
                   << "\n";
        } else {
            for (const auto& e : entries)
                os << e.dimension.text() << "\t" << e.word.text() << "\t" << tagText(e.tag)
                   << "\t[" << e.cls << "]" << (e.secondSummand ? "\t*" : "") << "\n";
        }
        return emit(ctx, out, os.str());
    });
}

rc_status rc_ssdump(rc_context* ctx, const char* kind, int n, int page, int64_t K, int64_t L,
                    const char* format, char** out) {
    if (!kind || !out) return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] {
        auto fmt = parseFormat(format);
        if (!fmt) return fail(ctx, RC_EINVAL, "unknown format");
        const std::string k = kind;
        SSConfig cfg;
        if (k == "tate")
            cfg.kind = SSKind::Tate;
        else if (k == "borel")
            cfg.kind = SSKind::Borel;
        else if (k == "geometric")
            cfg.kind = SSKind::Geometric;
        else if (k == "tower")
            cfg.kind = SSKind::TateFullTower;
        else
            return fail(ctx, RC_EINVAL, std::string("unknown spectral sequence: ") + kind);
        cfg.n = n;
        cfg.K = K;
        cfg.L = L;
        PageWindow w(cfg);
        if (page < 1)
            w.runToEnd();
        else
            while (w.page() < page && !w.exhausted()) w.turnPage();
        return emit(ctx, out, renderDump(w, page, *fmt));
    });
}

rc_status rc_verify(rc_context* ctx, const char* suite, int n, int64_t K, int64_t L,
                    const char* format, int64_t* failures, char** out) {
    if (!suite || !failures || !out) return fail(ctx, RC_EINVAL, "null argument");
    return guarded(ctx, [&] {
        auto fmt = parseFormat(format);
        if (!fmt) return fail(ctx, RC_EINVAL, "unknown format");
        SuiteResult res = runSuite(suite, n, K, L, *fmt);
        *failures = res.unexpectedFailures;
        return emit(ctx, out, res.report);
    });
}

}  // extern "C"
