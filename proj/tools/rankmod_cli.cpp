// Command-line surface for constructing, verifying, ranking, decoding and
// simulating limited-magnitude error-correcting Gray codes over permutations.
//
// Exit codes: 0 success, 1 verification/decode failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <unordered_set>

#include <CLI11.hpp>

#include "rankmod/aux_code.hpp"
#include "rankmod/channel.hpp"
#include "rankmod/code_io.hpp"
#include "rankmod/complete_code.hpp"
#include "rankmod/decoder.hpp"
#include "rankmod/kendall_snake.hpp"
#include "rankmod/lmrm_code.hpp"
#include "rankmod/ranking.hpp"
#include "rankmod/rate_bounds.hpp"

namespace {

using namespace rankmod;

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

AuxCatalog make_catalog(const std::string& certificate_path) {
    AuxCatalog catalog;
    if (!certificate_path.empty()) {
        auto cert = std::make_shared<AuxCode>(read_certificate_file(certificate_path));
        catalog.register_certificate(std::move(cert));
    }
    return catalog;
}

std::vector<Permutation> read_permutation_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::vector<Permutation> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto p = Permutation::parse(line);
        if (!p) throw std::runtime_error("bad permutation line: " + line);
        out.push_back(std::move(*p));
    }
    return out;
}

int cmd_construct(int n, int d, bool rankable, bool odd_last, const std::string& out_path,
                  uint64_t limit, const std::string& cert) {
    const AuxCatalog catalog = make_catalog(cert);
    const CodeParams params{n, d, rankable, odd_last};
    const LmrmCode code = construct(params, catalog);
    CodeFileHeader h;
    h.kind = "lmrm";
    h.set("n", std::to_string(n));
    h.set("d", std::to_string(d));
    h.set("M", std::to_string(code.size()));
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    write_code_file(out, h, code.materialize(limit));
    return 0;
}

int cmd_verify(const std::string& in_path, int d, bool check_distance, uint64_t limit) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open input file: " + in_path);
    const CodeFile file = read_code_file(in);
    if (file.code.size() > limit) throw std::length_error("code exceeds --limit");
    const LmrmReport rep = verify_materialized(file.code, d, check_distance);
    std::cout << "size=" << rep.size << " distinct=" << (rep.distinct_ok ? "ok" : "FAIL")
              << " gray=" << (rep.gray_ok ? "ok" : "FAIL")
              << " cyclic=" << (rep.cyclic_ok ? "ok" : "FAIL");
    if (rep.min_distance >= 0) std::cout << " min_distance=" << rep.min_distance;
    std::cout << (rep.pass ? " PASS" : " FAIL") << '\n';
    if (!rep.pass) {
        std::cerr << "verify: " << rep.failure << '\n';
        if (rep.violating_pair)
            std::cerr << "  pair: #" << rep.violating_pair->first << " #"
                      << rep.violating_pair->second << '\n';
        return 1;
    }
    return 0;
}

int cmd_encode(int n, int d, uint64_t rank, const std::string& out_path, const std::string& cert) {
    const AuxCatalog catalog = make_catalog(cert);
    const LmrmCode code = construct({n, d, true, false}, catalog);
    const RankableCode rankable(code);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << rankable.unrank(rank).to_string() << '\n';
    return 0;
}

int cmd_rankof(int n, int d, const std::string& perm_text, const std::string& cert) {
    const AuxCatalog catalog = make_catalog(cert);
    const LmrmCode code = construct({n, d, true, false}, catalog);
    const RankableCode rankable(code);
    const auto perm = Permutation::parse(perm_text);
    if (!perm) throw std::runtime_error("bad permutation: " + perm_text);
    const auto rank = rankable.rank(*perm);
    if (!rank) {
        std::cerr << "rankof: permutation is not a codeword\n";
        return 1;
    }
    std::cout << *rank << '\n';
    return 0;
}

int cmd_decode(int n, int d, bool rankable, const std::string& in_path,
               const std::string& out_path, bool check_membership, uint64_t limit,
               const std::string& cert) {
    const AuxCatalog catalog = make_catalog(cert);
    const LmrmCode code = construct({n, d, rankable, false}, catalog);
    const Decoder decoder(code);
    std::optional<RankableCode> ranker;
    std::unordered_set<Permutation, PermutationHash> members;
    if (check_membership) {
        if (rankable && n % d == 0) {
            ranker.emplace(code);
        } else {
            const auto mat = code.materialize(limit);
            members.insert(mat.begin(), mat.end());
        }
    }
    const auto received = read_permutation_lines(in_path);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    uint64_t failures = 0;
    for (const auto& tau : received) {
        DecodeFailure why;
        const auto decoded = decoder.decode(tau, &why);
        if (!decoded) {
            ++failures;
            out << "DECODE-FAILURE window=" << why.window << " " << why.detail << '\n';
            continue;
        }
        bool member = true;
        if (check_membership) {
            if (ranker) {
                const auto r = ranker->rank(*decoded);
                member = r && ranker->unrank(*r) == *decoded;
            } else {
                member = members.count(*decoded) > 0;
            }
        }
        if (!member) {
            ++failures;
            out << "DECODE-FAILURE not-a-codeword " << decoded->to_string() << '\n';
            continue;
        }
        out << decoded->to_string() << '\n';
    }
    if (failures) {
        std::cerr << "decode: " << failures << " failure(s)\n";
        return 1;
    }
    return 0;
}

int cmd_simulate(int n, int d, uint64_t trials, int noise, uint64_t seed, unsigned workers,
                 const std::string& cert) {
    const AuxCatalog catalog = make_catalog(cert);
    SimConfig cfg;
    cfg.params = {n, d, true, false};
    cfg.trials = trials;
    cfg.noise_magnitude = noise;
    cfg.seed = seed;
    cfg.workers = workers;
    const LmrmCode code = construct(cfg.params, catalog);
    const SimReport rep = simulate(cfg, code);
    std::cout << "n=" << n << " d=" << d << " trials=" << rep.trials << " noise=" << noise
              << " seed=" << seed << '\n';
    std::cout << "successes=" << rep.successes << " decode_failures=" << rep.decode_failures
              << " wrong_codeword=" << rep.wrong_codeword << '\n';
    std::cout.precision(6);
    std::cout << "success_rate=" << std::fixed << rep.success_rate() << '\n';
    std::cerr << "wallclock_seconds=" << rep.wallclock_seconds << '\n';
    return 0;
}

int cmd_rate_table(double from, double to, double step, const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    write_rate_csv(out, rate_table(from, to, step));
    return 0;
}

int cmd_aux(int order, bool rankable, const std::string& cert, bool transitions_body,
            const std::string& out_path, uint64_t limit) {
    const AuxCatalog catalog = make_catalog(cert);
    const auto code = catalog.get(order, rankable);
    if (code->size() > limit) throw std::length_error("aux code exceeds --limit");
    const AuxReport rep = verify_aux(*code);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    if (transitions_body) {
        write_certificate(out, *code);
    } else {
        CodeFileHeader h;
        h.kind = "aux";
        h.set("k", std::to_string(order));
        h.set("M", std::to_string(code->size()));
        h.set("family", aux_family_name(code->family));
        write_code_file(out, h, code->codewords);
    }
    if (!rep.pass) {
        std::cerr << "aux: verification failed: " << rep.failure << '\n';
        return 1;
    }
    return 0;
}

int cmd_complete(int order, const std::string& out_path, uint64_t limit) {
    CodeFileHeader h;
    h.kind = "complete";
    h.set("n", std::to_string(order));
    h.set("size", std::to_string(factorial(order)));
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    write_code_file(out, h, materialize_complete(order, limit));
    return 0;
}

int cmd_snake(int m, const std::string& out_path, bool verify, uint64_t limit) {
    const SnakeCode snake = build_snake(m);
    if (snake.size() > limit) throw std::length_error("snake exceeds --limit");
    CodeFileHeader h;
    h.kind = "ksnake";
    h.set("order", std::to_string(snake.order));
    h.set("M", std::to_string(snake.size()));
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    write_code_file(out, h, snake.codewords);
    if (verify) {
        const SnakeReport rep = verify_snake(snake.codewords);
        if (!rep.pass) {
            std::cerr << "snake: verification failed: " << rep.failure << '\n';
            return 1;
        }
        std::cerr << "snake: verified, spread 2 holds\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"limited-magnitude error-correcting Gray codes over permutations"};
    app.require_subcommand(1);

    int n = 6, d = 3, order = 4, m = 2, noise = 1;
    uint64_t limit = 1000000, rank = 0, trials = 10000, seed = 1;
    unsigned workers = 1;
    bool rankable = false, odd_last = false, no_distance = false, do_verify = false,
         transitions_body = false;
    double from = 0.02, to = 1.0, step = 0.01;
    std::string in_path, out_path, cert, perm_text;

    auto* c_construct = app.add_subcommand("construct", "build a code and write its codewords");
    c_construct->add_option("-n", n, "code length")->required();
    c_construct->add_option("-d", d, "minimum distance")->required();
    c_construct->add_flag("--rankable", rankable, "use rank-supporting auxiliary codes");
    c_construct->add_flag("--odd-class-last", odd_last, "reorder so an odd class comes last");
    c_construct->add_option("--out", out_path, "output file (default stdout)");
    c_construct->add_option("--limit", limit, "materialization cap");
    c_construct->add_option("--certificate", cert, "auxiliary-code certificate file");

    auto* c_verify = app.add_subcommand("verify", "verify a code file");
    c_verify->add_option("--in", in_path, "code file")->required();
    c_verify->add_option("-d", d, "required minimum distance")->required();
    c_verify->add_flag("--no-distance", no_distance, "skip the pairwise distance scan");
    c_verify->add_option("--limit", limit, "materialization cap");

    auto* c_encode = app.add_subcommand("encode", "codeword at a given rank");
    c_encode->add_option("-n", n)->required();
    c_encode->add_option("-d", d)->required();
    c_encode->add_option("--rank", rank, "0-based rank")->required();
    c_encode->add_option("--out", out_path, "output file (default stdout)");
    c_encode->add_option("--certificate", cert);

    auto* c_rankof = app.add_subcommand("rankof", "rank of a given codeword");
    c_rankof->add_option("-n", n)->required();
    c_rankof->add_option("-d", d)->required();
    c_rankof->add_option("--perm", perm_text, "permutation, e.g. \"4 1 5 2 6 3\"")->required();
    c_rankof->add_option("--certificate", cert);

    auto* c_decode = app.add_subcommand("decode", "decode noisy permutations");
    c_decode->add_option("-n", n)->required();
    c_decode->add_option("-d", d)->required();
    c_decode->add_flag("--rankable", rankable);
    c_decode->add_option("--in", in_path, "received permutations, one per line")->required();
    c_decode->add_option("--out", out_path, "output file (default stdout)");
    c_decode->add_flag("--verify", do_verify, "re-check membership of every decoded word");
    c_decode->add_option("--limit", limit);
    c_decode->add_option("--certificate", cert);

    auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo bounded-noise channel");
    c_sim->add_option("-n", n)->required();
    c_sim->add_option("-d", d)->required();
    c_sim->add_option("--trials", trials);
    c_sim->add_option("--noise", noise, "error magnitude (may exceed the radius)");
    c_sim->add_option("--seed", seed);
    c_sim->add_option("--workers", workers);
    c_sim->add_option("--certificate", cert);

    auto* c_rate = app.add_subcommand("rate-table", "emit the asymptotic rate curves as CSV");
    c_rate->add_option("--from", from);
    c_rate->add_option("--to", to);
    c_rate->add_option("--step", step);
    c_rate->add_option("--out", out_path, "output file (default stdout)");

    auto* c_aux = app.add_subcommand("aux", "build an auxiliary code");
    c_aux->add_option("--order", order, "auxiliary order k")->required();
    c_aux->add_flag("--rankable", rankable, "pick the rank-supporting family");
    c_aux->add_option("--certificate", cert, "certificate for odd orders >= 7");
    c_aux->add_flag("--transitions", transitions_body,
                    "write the transition sequence (certificate format) instead of codewords");
    c_aux->add_option("--out", out_path, "output file (default stdout)");
    c_aux->add_option("--limit", limit, "materialization cap");

    auto* c_complete = app.add_subcommand("complete", "complete push-to-the-top code");
    c_complete->add_option("--order", order, "order n")->required();
    c_complete->add_option("--materialize", out_path, "output file (default stdout)");
    c_complete->add_option("--limit", limit);

    auto* c_snake = app.add_subcommand("snake", "Kendall single-error-detecting code");
    c_snake->add_option("--m", m, "half-order parameter (order 2m+2)")->required();
    c_snake->add_option("--out", out_path, "output file (default stdout)");
    c_snake->add_flag("--verify", do_verify, "run the spread-2 verifier");
    c_snake->add_option("--limit", limit, "materialization cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_construct))
            return cmd_construct(n, d, rankable, odd_last, out_path, limit, cert);
        if (app.got_subcommand(c_verify)) return cmd_verify(in_path, d, !no_distance, limit);
        if (app.got_subcommand(c_encode)) return cmd_encode(n, d, rank, out_path, cert);
        if (app.got_subcommand(c_rankof)) return cmd_rankof(n, d, perm_text, cert);
        if (app.got_subcommand(c_decode))
            return cmd_decode(n, d, rankable, in_path, out_path, do_verify, limit, cert);
        if (app.got_subcommand(c_sim)) return cmd_simulate(n, d, trials, noise, seed, workers, cert);
        if (app.got_subcommand(c_rate)) return cmd_rate_table(from, to, step, out_path);
        if (app.got_subcommand(c_aux))
            return cmd_aux(order, rankable, cert, transitions_body, out_path, limit);
        if (app.got_subcommand(c_complete)) return cmd_complete(order, out_path, limit);
        if (app.got_subcommand(c_snake)) return cmd_snake(m, out_path, do_verify, limit);
    } catch (const UnsupportedAuxOrder& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
