#include "rankdec/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rankdec/error.hpp"

namespace rankdec {

namespace {

void expect_header(std::istream& is, const std::string& tag) {
    std::string word, version;
    if (!(is >> word >> version) || word != tag || version != "v1")
        throw Error(ErrorCode::ParseError, "expected header '" + tag + " v1'");
}

template <class T>
T read_num(std::istream& is, const char* what) {
    T v{};
    if (!(is >> v)) throw Error(ErrorCode::ParseError, std::string("could not read ") + what);
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void write_matrix(std::ostream& os, const Tower& T, const FoldedMatrix& M) {
    const Matrix A = M.to_fq(T);
    os << "rankdec-matrix v1 " << T.r() << ' ' << T.ell() << ' ' << T.n() << ' ' << A.cols() << '\n';
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) os << (j ? " " : "") << A(i, j);
        os << '\n';
    }
}

FoldedMatrix read_matrix(std::istream& is, const Tower& T) {
    expect_header(is, "rankdec-matrix");
    const auto r = read_num<std::uint64_t>(is, "r");
    const auto ell = read_num<unsigned>(is, "ell");
    const auto n = read_num<unsigned>(is, "n");
    const auto cols = read_num<std::size_t>(is, "cols");
    if (r != T.r() || ell != T.ell() || n != T.n())
        throw Error(ErrorCode::ShapeMismatch, "matrix file parameters differ from the code parameters");
    if (cols != static_cast<std::size_t>(r - 1) * n)
        throw Error(ErrorCode::ShapeMismatch, "matrix file needs (r-1) n columns");
    Matrix A(n, cols);
    for (unsigned i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const auto x = read_num<Elem>(is, "matrix entry");
            if (!T.fq().contains(x)) throw Error(ErrorCode::ParseError, "matrix entry outside F_q");
            A(i, j) = x;
        }
    return FoldedMatrix::from_fq(T, A);
}

void write_message(std::ostream& os, const MessagePoly& f) {
    os << "rankdec-msg v1\n";
    const auto c = f.flatten();
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << '\n';
}

MessagePoly read_message(std::istream& is, const CodeParams& p) {
    expect_header(is, "rankdec-msg");
    std::vector<Elem> c(static_cast<std::size_t>(p.m) * p.k);
    for (auto& x : c) {
        x = read_num<Elem>(is, "message coefficient");
        if (!p.tower->fqn().contains(x)) throw Error(ErrorCode::ParseError, "coefficient outside F_{q^n}");
    }
    std::string extra;
    if (is >> extra) throw Error(ErrorCode::LengthMismatch, "message file has more than m k coefficients");
    return MessagePoly::unflatten(c, p.k, p.m);
}

void write_params(std::ostream& os, const ParamsFile& pf) {
    os << "rankdec-params v1\n";
    os << "r=" << pf.r << "\nell=" << pf.ell << "\nn=" << pf.n << "\nm=" << pf.m << "\nk=" << pf.k << "\ns=" << pf.s
       << '\n';
    if (pf.e) os << "e=" << *pf.e << '\n';
}

ParamsFile read_params(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || trim(line) != "rankdec-params v1")
        throw Error(ErrorCode::ParseError, "expected header 'rankdec-params v1'");
    ParamsFile pf;
    bool seen[6] = {};
    for (const auto& [key, value] : read_key_values(is)) {
        unsigned long long v = 0;
        try {
            std::size_t used = 0;
            v = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad value for '" + key + "': " + value);
        }
        if (key == "r") pf.r = v, seen[0] = true;
        else if (key == "ell") pf.ell = static_cast<unsigned>(v), seen[1] = true;
        else if (key == "n") pf.n = static_cast<unsigned>(v), seen[2] = true;
        else if (key == "m") pf.m = static_cast<unsigned>(v), seen[3] = true;
        else if (key == "k") pf.k = static_cast<unsigned>(v), seen[4] = true;
        else if (key == "s") pf.s = static_cast<unsigned>(v), seen[5] = true;
        else if (key == "e") pf.e = static_cast<unsigned>(v);
        else throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
    }
    static const char* names[6] = {"r", "ell", "n", "m", "k", "s"};
    for (int i = 0; i < 6; ++i)
        if (!seen[i]) throw Error(ErrorCode::ParseError, std::string("missing key '") + names[i] + "'");
    return pf;
}

void write_stats(std::ostream& os, const DecodeStats& st) {
    os << "kernel_dim=" << st.kernel_dim << '\n'
       << "list_size=" << st.list_size << '\n'
       << "branches=" << st.branches << '\n'
       << "interp_unknowns=" << st.interp_unknowns << '\n'
       << "interp_constraints=" << st.interp_constraints << '\n'
       << "candidates=" << st.candidates << '\n'
       << "pruned=" << st.pruned << '\n'
       << "degenerate=" << st.degenerate << '\n'
       << "overflow=" << st.overflow << '\n';
}

std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& is) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value, got '" + line + "'");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << contents)) throw Error(ErrorCode::ParseError, "cannot write " + path);
}

}  // namespace rankdec
