#include "gbh/scene.hpp"

#include "gbh/mass_properties.hpp"
#include "gbh/sampling.hpp"

namespace gbh {

ObjectScene make_scene(TriangleMesh mesh, SurfaceCloud cloud) {
  orient_outward(mesh);
  if (mesh.normals.size() != mesh.faces.size()) mesh.update_normals();
  validate_mesh(mesh);
  ObjectScene scene;
  scene.stats = compute_com(mesh);
  scene.bvh = TriangleBvh(mesh);
  scene.cloud_index = PointIndex(cloud.points);
  scene.cloud = std::move(cloud);
  scene.mesh = std::move(mesh);
  return scene;
}

ObjectScene prepare_scene(TriangleMesh mesh, std::size_t sample_count, std::uint64_t seed) {
  orient_outward(mesh);
  if (mesh.normals.size() != mesh.faces.size()) mesh.update_normals();
  SurfaceCloud cloud = poisson_disk_sample(mesh, sample_count, seed);
  return make_scene(std::move(mesh), std::move(cloud));
}

}  // namespace gbh
