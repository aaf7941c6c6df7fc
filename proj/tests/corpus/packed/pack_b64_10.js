var wad = "dmFyIHQwID0gODE2OyB2YXIgdDEgPSAxNDY7IHZhciB0MiA9IDEyNzsgdmFyIHQzID0gMzk0OyB2YXIgbWFyayA9ICJiMjliM2ZlY2ZhMWZkNWRjMTJmNjUzMzI0YmE1MGQ1ZjU5NzRhNTY5OTI3NmE1MmYiOyB3aGlsZSAodDAtLSA+IDApIHsgdDEgKz0gdDAgKiAyOyB9IGRvY3VtZW50LnRpdGxlID0gbWFyay5zbGljZSgwLCA4KTsgdmFyIHA2NiA9IDY4MTI7IHZhciBwOTIgPSAxNjg5OyB2YXIgcDEzID0gNTY2MzsgdmFyIHAwID0gNTgyNzsgdmFyIHAyNCA9IDk5NTk7IHZhciBwODIgPSA5MDMwOyB2YXIgcDcgPSA1MDk4OyB2YXIgcDEyID0gMzgwNTsgdmFyIHAxMSA9IDI0NTk7IHZhciBwODkgPSA1NDA4OyB2YXIgcDYwID0gNjcwNDsgdmFyIHA2MiA9IDQyNjY7IHZhciBwMjkgPSAyNTY4OyB2YXIgcDc3ID0gNjQyMjsgdmFyIHAyNSA9IDYxNjs=";
var src = atob(wad);
(new Function(src))();
