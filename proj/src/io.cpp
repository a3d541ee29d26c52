#include "altiso/io.hpp"

#include <fstream>
#include <sstream>

#include "altiso/errors.hpp"

namespace altiso {

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    // next non-blank line split into tokens
    bool next_tokens(std::vector<std::string>& toks) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream ss(line);
            toks.clear();
            std::string t;
            while (ss >> t) toks.push_back(t);
            if (!toks.empty()) return true;
        }
        return false;
    }
};

long parse_int(const std::string& s, int line) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw parse_error(line, "trailing characters in number '" + s + "'");
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (...) {
        throw parse_error(line, "expected an integer, got '" + s + "'");
    }
}

std::vector<Matrix> read_blocks(LineReader& lr, u32 rows, u32 cols, u32 count, PrimeField f) {
    std::vector<Matrix> mats;
    for (u32 k = 0; k < count; ++k) {
        Matrix a(rows, cols, f);
        for (u32 i = 0; i < rows; ++i) {
            std::vector<std::string> toks;
            if (!lr.next_tokens(toks))
                throw parse_error(lr.line_no + 1, "unexpected end of file inside matrix block");
            if (toks.size() != cols)
                throw parse_error(lr.line_no, "expected " + std::to_string(cols) + " entries, got " +
                                                  std::to_string(toks.size()));
            for (u32 j = 0; j < cols; ++j) {
                const long v = parse_int(toks[j], lr.line_no);
                if (v < 0 || v >= static_cast<long>(f.p()))
                    throw parse_error(lr.line_no, "entry " + std::to_string(v) + " out of [0, q)");
                a.at(i, j) = static_cast<u16>(v);
            }
        }
        mats.push_back(std::move(a));
    }
    return mats;
}

} // namespace

AlternatingTuple read_alt_space(std::istream& in) {
    LineReader lr{in};
    std::vector<std::string> toks;
    if (!lr.next_tokens(toks)) throw parse_error(1, "empty input");
    if (toks.size() != 4 || toks[0] != "altmatspace")
        throw parse_error(lr.line_no, "expected header 'altmatspace n m q'");
    const long n = parse_int(toks[1], lr.line_no);
    const long m = parse_int(toks[2], lr.line_no);
    const long q = parse_int(toks[3], lr.line_no);
    if (n < 1 || m < 0 || q < 2) throw parse_error(lr.line_no, "bad header values");
    PrimeField f(static_cast<u32>(q));
    std::vector<Matrix> mats =
        read_blocks(lr, static_cast<u32>(n), static_cast<u32>(n), static_cast<u32>(m), f);
    const int after = lr.line_no;
    for (u32 k = 0; k < mats.size(); ++k)
        if (!AlternatingTuple::matrix_is_alternating(mats[k]))
            throw parse_error(after, "matrix " + std::to_string(k + 1) + " is not alternating");
    return AlternatingTuple(static_cast<u32>(n), f, std::move(mats));
}

AlternatingTuple read_alt_space_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_alt_space(in);
}

void write_alt_space(std::ostream& out, const AlternatingTuple& g) {
    out << "altmatspace " << g.n << ' ' << g.m() << ' ' << g.field.p() << '\n';
    for (const Matrix& a : g.mats) {
        out << '\n';
        for (u32 i = 0; i < g.n; ++i) {
            for (u32 j = 0; j < g.n; ++j) out << (j ? " " : "") << a.at(i, j);
            out << '\n';
        }
    }
}

void write_alt_space_file(const std::string& path, const AlternatingTuple& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_alt_space(out, g);
}

MatrixTuple read_mat_space(std::istream& in) {
    LineReader lr{in};
    std::vector<std::string> toks;
    if (!lr.next_tokens(toks)) throw parse_error(1, "empty input");
    if (toks.size() != 5 || toks[0] != "matspace")
        throw parse_error(lr.line_no, "expected header 'matspace s t r q'");
    const long s = parse_int(toks[1], lr.line_no);
    const long t = parse_int(toks[2], lr.line_no);
    const long r = parse_int(toks[3], lr.line_no);
    const long q = parse_int(toks[4], lr.line_no);
    if (s < 0 || t < 0 || r < 0 || q < 2) throw parse_error(lr.line_no, "bad header values");
    PrimeField f(static_cast<u32>(q));
    std::vector<Matrix> mats =
        read_blocks(lr, static_cast<u32>(s), static_cast<u32>(t), static_cast<u32>(r), f);
    return MatrixTuple(static_cast<u32>(s), static_cast<u32>(t), f, std::move(mats));
}

void write_mat_space(std::ostream& out, const MatrixTuple& b) {
    out << "matspace " << b.s << ' ' << b.t << ' ' << b.r() << ' ' << b.field.p() << '\n';
    for (const Matrix& a : b.mats) {
        out << '\n';
        for (u32 i = 0; i < b.s; ++i) {
            for (u32 j = 0; j < b.t; ++j) out << (j ? " " : "") << a.at(i, j);
            out << '\n';
        }
    }
}

std::string matrix_to_string(const Matrix& m) {
    std::string s;
    for (u32 i = 0; i < m.rows(); ++i) {
        if (i) s += ';';
        for (u32 j = 0; j < m.cols(); ++j) {
            if (j) s += ' ';
            s += std::to_string(m.at(i, j));
        }
    }
    return s;
}

} // namespace altiso
