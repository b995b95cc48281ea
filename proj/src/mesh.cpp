#include "gazetrace/mesh.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gazetrace/errors.hpp"
#include "gazetrace/textio.hpp"

namespace gazetrace {

namespace {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

}  // namespace

double TriangleMesh::surface_area() const {
    double area = 0.0;
    for (const auto& t : triangles) {
        area += triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
    }
    return area;
}

void TriangleMesh::validate() const {
    const int n = static_cast<int>(vertices.size());
    for (const auto& v : vertices) {
        if (!v.allFinite()) {
            throw ConfigError("mesh '" + name + "': non-finite vertex");
        }
    }
    for (const auto& t : triangles) {
        for (int idx : t) {
            if (idx < 0 || idx >= n) {
                throw ConfigError("mesh '" + name + "': triangle index out of range");
            }
        }
        if (triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]) <= 1e-12) {
            throw ConfigError("mesh '" + name + "': degenerate triangle");
        }
    }
}

TriangleMesh box_to_mesh(const Box& box, std::string name) {
    if (!(box.extents.x() > 0 && box.extents.y() > 0 && box.extents.z() > 0)) {
        throw ConfigError("box_to_mesh: extents must be positive");
    }
    const Vec3 lo = box.min();
    const Vec3 hi = box.max();
    TriangleMesh m;
    m.name = std::move(name);
    m.vertices = {
        {lo.x(), lo.y(), lo.z()}, {hi.x(), lo.y(), lo.z()},
        {hi.x(), hi.y(), lo.z()}, {lo.x(), hi.y(), lo.z()},
        {lo.x(), lo.y(), hi.z()}, {hi.x(), lo.y(), hi.z()},
        {hi.x(), hi.y(), hi.z()}, {lo.x(), hi.y(), hi.z()},
    };
    // Outward winding under the right-handed (+x right, +y down, +z forward)
    // frame: counter-clockwise when seen from outside.
    m.triangles = {
        {0, 2, 1}, {0, 3, 2},  // z = lo face (toward camera)
        {4, 5, 6}, {4, 6, 7},  // z = hi face
        {0, 1, 5}, {0, 5, 4},  // y = lo face (top)
        {3, 6, 2}, {3, 7, 6},  // y = hi face (bottom)
        {0, 7, 3}, {0, 4, 7},  // x = lo face
        {1, 2, 6}, {1, 6, 5},  // x = hi face
    };
    return m;
}

namespace {

void quad_basis(const Vec3& normal, Vec3& u, Vec3& v) {
    const Vec3 n = normal.normalized();
    Vec3 up = Vec3::UnitY();
    if (std::abs(n.dot(up)) > 0.9) up = Vec3::UnitX();
    u = n.cross(up).normalized();
    v = n.cross(u);
}

}  // namespace

TriangleMesh make_quad(const Vec3& center, const Vec3& normal, double width,
                       double height, std::string name) {
    return make_subdivided_quad(center, normal, width, height, 1, 1, std::move(name));
}

TriangleMesh make_subdivided_quad(const Vec3& center, const Vec3& normal, double width,
                                  double height, int nx, int ny, std::string name) {
    if (nx < 1 || ny < 1 || !(width > 0) || !(height > 0)) {
        throw ConfigError("make_subdivided_quad: invalid dimensions");
    }
    Vec3 u, v;
    quad_basis(normal, u, v);
    TriangleMesh m;
    m.name = std::move(name);
    m.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const double a = (static_cast<double>(i) / nx - 0.5) * width;
            const double b = (static_cast<double>(j) / ny - 0.5) * height;
            m.vertices.push_back(center + a * u + b * v);
        }
    }
    const auto at = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            m.triangles.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            m.triangles.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    }
    return m;
}

TriangleMesh load_obj(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path);
    if (!in) throw ConfigError("obj: cannot open " + path.string());
    TriangleMesh m;
    m.name = name.empty() ? path.filename().string() : std::move(name);

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ss >> x >> y >> z)) {
                throw ConfigError("obj: bad vertex at " + path.string() + ":" +
                                  std::to_string(line_no));
            }
            m.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ss >> tok) {
                // "i", "i/t", "i//n", "i/t/n" — only the vertex index matters.
                const std::size_t slash = tok.find('/');
                const std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
                int i = 0;
                try {
                    i = std::stoi(head);
                } catch (...) {
                    throw ConfigError("obj: bad face index at " + path.string() + ":" +
                                      std::to_string(line_no));
                }
                const int n = static_cast<int>(m.vertices.size());
                const int resolved = i > 0 ? i - 1 : n + i;
                if (resolved < 0 || resolved >= n) {
                    throw ConfigError("obj: face index out of range at " + path.string() +
                                      ":" + std::to_string(line_no));
                }
                idx.push_back(resolved);
            }
            if (idx.size() < 3) {
                throw ConfigError("obj: face with fewer than 3 vertices at " +
                                  path.string() + ":" + std::to_string(line_no));
            }
            for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
                m.triangles.push_back({idx[0], idx[k], idx[k + 1]});
            }
        }
    }
    return m;
}

void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("obj: cannot write " + path.string());
    for (const auto& v : mesh.vertices) {
        out << "v " << format_shortest(v.x()) << ' ' << format_shortest(v.y()) << ' '
            << format_shortest(v.z()) << '\n';
    }
    for (const auto& t : mesh.triangles) {
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
}

void transform_in_place(TriangleMesh& mesh, const RigidTransform& pose) {
    for (auto& v : mesh.vertices) v = apply(pose, v);
}

}  // namespace gazetrace
