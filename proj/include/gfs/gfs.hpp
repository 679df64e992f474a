#ifndef GFS_GFS_HPP
#define GFS_GFS_HPP

#include "gfs/bundle.hpp"
#include "gfs/convolution.hpp"
#include "gfs/errors.hpp"
#include "gfs/fourier_stieltjes.hpp"
#include "gfs/groupoid.hpp"
#include "gfs/linalg.hpp"
#include "gfs/measures.hpp"
#include "gfs/random.hpp"
#include "gfs/representation.hpp"
#include "gfs/sdp.hpp"

#endif  // GFS_GFS_HPP
