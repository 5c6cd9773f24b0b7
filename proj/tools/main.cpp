// command-line front end; all computation goes through the shared-library
// C interface in symweb.h
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symweb.h"

namespace {

struct Options {
    std::uint64_t max_enum = 0; // 0 = library default
    std::uint32_t threads = 0;
};

sw_options to_sw(const Options& o) { return sw_options{o.max_enum, o.threads}; }

int fail_status(sw_status st) {
    std::cerr << "error: " << sw_last_error() << "\n";
    return (int)st;
}

// exits with 2 on unreadable input
std::string read_file(const std::string& path, int& err) {
    std::ifstream in(path);
    if (!in.good()) {
        std::cerr << "error: cannot read '" << path << "'\n";
        err = 2;
        return {};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    err = 0;
    return ss.str();
}

struct WebHandle {
    sw_web* web = nullptr;
    ~WebHandle() { sw_web_free(web); }
};

struct TextHandle {
    char* text = nullptr;
    ~TextHandle() { sw_free(text); }
};

int load_web(const std::string& path, WebHandle& out) {
    int err = 0;
    std::string text = read_file(path, err);
    if (err) return err;
    sw_status st = sw_web_parse(text.c_str(), &out.web);
    if (st != SW_OK) return fail_status(st);
    return 0;
}

int write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path);
    if (!out.good()) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 2;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for webs of symmetric matrices"};
    app.require_subcommand(1);

    std::string file_a, file_b, a_rows, p_rows, out_path, group_kind = "cong";
    std::string field_text, disc_text, outdir = ".";
    bool normalized = false;
    int m = 0, n = 0, ext = 0;
    Options opt;

    auto add_enum_flags = [&](CLI::App* cmd, bool with_threads) {
        cmd->add_option("--max-enum", opt.max_enum, "enumeration cap (default 100000000)");
        if (with_threads) cmd->add_option("--threads", opt.threads, "worker threads (default 1)");
    };

    auto* disc = app.add_subcommand("disc", "print the discriminant polynomial");
    disc->add_option("file", file_a, "input .swt file")->required();

    auto* grcheck = app.add_subcommand("grcheck", "classify the discriminant");
    grcheck->add_option("file", file_a, "input .swt file")->required();

    auto* act = app.add_subcommand("act", "apply a group element to a web");
    act->add_option("file", file_a, "input .swt file")->required();
    act->add_option("--A", a_rows, "matrix A, rows separated by ';'")->required();
    act->add_option("--P", p_rows, "matrix P, rows separated by ';'")->required();
    act->add_flag("--normalized", normalized, "apply det(A)^{-1} M . (A, P)");
    act->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* endo = app.add_subcommand("endo", "endomorphism algebra report");
    endo->add_option("file", file_a, "input .swt file")->required();
    add_enum_flags(endo, false);

    auto* fiber = app.add_subcommand("fiber", "enumerate the fiber through a web");
    fiber->add_option("file", file_a, "input .swt file")->required();
    fiber->add_option("--outdir", outdir, "directory for fiber_<i>.swt files");
    add_enum_flags(fiber, false);

    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two webs");
    equiv->add_option("file_a", file_a, "first .swt file")->required();
    equiv->add_option("file_b", file_b, "second .swt file")->required();
    equiv->add_option("--group", group_kind, "cong | full | module")->required();
    add_enum_flags(equiv, false);

    auto* census = app.add_subcommand("census", "exhaustive congruence census");
    census->add_option("--field", field_text, "F<p>")->required();
    census->add_option("--m", m, "m (number of matrices minus one)")->required();
    census->add_option("--n", n, "n (matrix size minus one)")->required();
    census->add_option("--disc", disc_text, "target discriminant polynomial")->required();
    add_enum_flags(census, true);

    auto* autgroup = app.add_subcommand("autgroup", "quadric stabilizer groups");
    autgroup->add_option("file", file_a, "input .swt file")->required();
    autgroup->add_option("--ext", ext, "also count base-locus points over F_{q^ext}");
    add_enum_flags(autgroup, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    sw_options sw_opt = to_sw(opt);

    if (disc->parsed()) {
        WebHandle w;
        if (int err = load_web(file_a, w)) return err;
        TextHandle t;
        sw_status st = sw_web_disc(w.web, &t.text);
        if (st != SW_OK) return fail_status(st);
        std::cout << t.text << "\n";
        return 0;
    }

    if (grcheck->parsed()) {
        WebHandle w;
        if (int err = load_web(file_a, w)) return err;
        TextHandle t;
        sw_status st = sw_web_classify(w.web, &t.text);
        if (st != SW_OK) return fail_status(st);
        std::cout << t.text << "\n";
        return std::string(t.text) == "zero_disc" ? 3 : 0;
    }

    if (act->parsed()) {
        WebHandle w;
        if (int err = load_web(file_a, w)) return err;
        WebHandle moved;
        sw_status st = sw_web_act(w.web, a_rows.c_str(), p_rows.c_str(), normalized ? 1 : 0,
                                  &moved.web);
        if (st != SW_OK) return fail_status(st);
        TextHandle t;
        st = sw_web_render(moved.web, &t.text);
        if (st != SW_OK) return fail_status(st);
        return write_text(out_path, t.text);
    }

    if (endo->parsed()) {
        WebHandle w;
        if (int err = load_web(file_a, w)) return err;
        TextHandle t;
        sw_status st = sw_web_endo_report(w.web, &sw_opt, &t.text);
        if (st != SW_OK) return fail_status(st);
        std::cout << t.text;
        return 0;
    }

    if (fiber->parsed()) {
        WebHandle w;
        if (int err = load_web(file_a, w)) return err;
        sw_web** reps = nullptr;
        size_t count = 0;
        sw_status st = sw_web_fiber(w.web, &sw_opt, &reps, &count);
        if (st != SW_OK) return fail_status(st);
        int err = 0;
        for (size_t i = 0; i < count && !err; ++i) {
            TextHandle t;
            st = sw_web_render(reps[i], &t.text);
            if (st != SW_OK) {
                err = fail_status(st);
                break;
            }
            err = write_text(outdir + "/fiber_" + std::to_string(i) + ".swt", t.text);
        }
        for (size_t i = 0; i < count; ++i) sw_web_free(reps[i]);
        std::free(reps);
        if (err) return err;
        std::cout << "group_order=" << count << "\n";
        return 0;
    }

    if (equiv->parsed()) {
        WebHandle a, b;
        if (int err = load_web(file_a, a)) return err;
        if (int err = load_web(file_b, b)) return err;
        int verdict = 0;
        TextHandle t;
        sw_status st = sw_web_equiv(a.web, b.web, group_kind.c_str(), &sw_opt, &verdict, &t.text);
        if (st != SW_OK) return fail_status(st);
        if (verdict == 1) {
            std::cout << "equivalent\n" << t.text;
            return 0;
        }
        if (verdict == 0) {
            std::cout << "inequivalent\n";
            return 0;
        }
        std::cout << "inequivalent(probabilistic)\n";
        return 3;
    }

    if (census->parsed()) {
        TextHandle t;
        sw_status st = sw_census(field_text.c_str(), m, n, disc_text.c_str(), &sw_opt, &t.text);
        if (st != SW_OK) return fail_status(st);
        std::cout << t.text;
        return 0;
    }

    if (autgroup->parsed()) {
        WebHandle w;
        if (int err = load_web(file_a, w)) return err;
        TextHandle t;
        sw_status st = sw_autgroup(w.web, ext, &sw_opt, &t.text);
        if (st != SW_OK) return fail_status(st);
        std::cout << t.text;
        return 0;
    }

    return 1;
}
