#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rankmod/aux_code.hpp"
#include "rankmod/permutation.hpp"

namespace rankmod {

// Flat-file formats.  A code file is a single `# <kind> key=value ...` header
// line followed by one permutation per line (space-separated 1-based values).
// Certificate files share the header but carry one transition index per line.

struct CodeFileHeader {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;  // in emission order

    void set(const std::string& key, const std::string& value) {
        for (auto& [k, v] : fields)
            if (k == key) { v = value; return; }
        fields.emplace_back(key, value);
    }

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return &v;
        return nullptr;
    }

    uint64_t get_u64(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw std::runtime_error("header: missing field " + key);
        return std::stoull(*v);
    }

    std::string to_line() const {
        std::string s = "# " + kind;
        for (const auto& [k, v] : fields) s += " " + k + "=" + v;
        return s;
    }

    static CodeFileHeader parse(const std::string& line) {
        CodeFileHeader h;
        std::istringstream in(line);
        std::string tok;
        if (!(in >> tok) || tok != "#") throw std::runtime_error("header: expected leading '#'");
        if (!(in >> h.kind)) throw std::runtime_error("header: missing kind");
        while (in >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::runtime_error("header: bad field " + tok);
            h.set(tok.substr(0, eq), tok.substr(eq + 1));
        }
        return h;
    }
};

inline void write_code_file(std::ostream& out, const CodeFileHeader& header,
                            const std::vector<Permutation>& code) {
    out << header.to_line() << '\n';
    for (const auto& p : code) out << p.to_string() << '\n';
}

struct CodeFile {
    CodeFileHeader header;
    std::vector<Permutation> code;
};

inline CodeFile read_code_file(std::istream& in) {
    CodeFile f;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("code file: empty");
    f.header = CodeFileHeader::parse(line);
    int n = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto p = Permutation::parse(line);
        if (!p) throw std::runtime_error("code file: bad permutation line: " + line);
        if (n == -1) n = p->size();
        else if (p->size() != n) throw std::runtime_error("code file: inconsistent order");
        f.code.push_back(std::move(*p));
    }
    // declared sizes, when present, must match
    for (const char* key : {"M", "size"}) {
        if (const std::string* v = f.header.find(key); v && std::stoull(*v) != f.code.size())
            throw std::runtime_error("code file: declared size does not match line count");
    }
    if (const std::string* v = f.header.find("n"); v && n != -1 && std::stoi(*v) != n)
        throw std::runtime_error("code file: declared n does not match permutations");
    return f;
}

// Certificates: `# aux k=<k> M=<M> family=<name>` then one transition index
// per line.
inline void write_certificate(std::ostream& out, const AuxCode& code) {
    CodeFileHeader h;
    h.kind = "aux";
    h.set("k", std::to_string(code.order));
    h.set("M", std::to_string(code.size()));
    h.set("family", aux_family_name(code.family));
    out << h.to_line() << '\n';
    for (int t : code.transitions) out << t << '\n';
}

// Loads and validates a certificate; throws when verify_aux rejects it.
inline AuxCode read_certificate(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("certificate: empty");
    const CodeFileHeader h = CodeFileHeader::parse(line);
    if (h.kind != "aux") throw std::runtime_error("certificate: expected kind 'aux'");
    const int k = static_cast<int>(h.get_u64("k"));
    std::vector<int> trans;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        trans.push_back(std::stoi(line));
        if (trans.back() < 2 || trans.back() > k)
            throw std::runtime_error("certificate: transition index out of range");
    }
    if (h.find("M") && h.get_u64("M") != trans.size())
        throw std::runtime_error("certificate: declared M does not match transition count");
    AuxCode code = AuxCode::from_transitions(k, std::move(trans),
                                             AuxFamily::searched_parity_preserving);
    const AuxReport rep = verify_aux(code);
    if (!rep.pass) throw std::runtime_error("certificate: verification failed: " + rep.failure);
    return code;
}

inline AuxCode read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open certificate: " + path);
    return read_certificate(in);
}

}  // namespace rankmod
